from fastapi import APIRouter, HTTPException
import asyncio
import logging
import time

from config import MAX_API_TIMEOUT
from models import AnswerOut, ParseRequest, ParseResponse, QueryResultOut, RunRequest, RunResponse
from utils.errors import KanrenError, ParseError, QueryTimeout
from utils.evaluator import Answer, Deadline, ProgramEvaluator, effective_count
from utils.parser import parse
from utils.printer import format_answer, format_program, format_query, print_store
from utils.stdlib import get_system
from utils.terms import render

logger = logging.getLogger(__name__)

router = APIRouter()


def _answer_out(answer: Answer, with_store: bool) -> AnswerOut:
    return AnswerOut(
        bindings={name: render(term) for name, term in answer.bindings.items()},
        readback=format_answer(answer),
        store=print_store(answer.state) if with_store else None,
    )


def _run_program(request: RunRequest) -> RunResponse:
    """Blocking evaluation; runs in a worker thread under a cooperative deadline."""
    system = get_system(request.system.value)
    program = parse(request.source, system)
    evaluator = ProgramEvaluator(program, system)
    deadline = Deadline(min(request.timeout or MAX_API_TIMEOUT, MAX_API_TIMEOUT))

    results = []
    timed_out = False
    for query in program.queries:
        out = QueryResultOut(query=format_query(query), variables=query.variables, answers=[])
        if not timed_out:
            count = effective_count(query, request.take, request.take_all)
            try:
                for answer in evaluator.answers(query, count, deadline.tick):
                    out.answers.append(_answer_out(answer, request.stores))
            except QueryTimeout as e:
                logger.warning(f"{out.query}: {e}; returning {len(out.answers)} partial answer(s)")
                timed_out = True
        out.timed_out = timed_out
        results.append(out)
    return RunResponse(system=system.name, results=results, timed_out=timed_out, elapsed_ms=0.0)


@router.post("/run", response_model=RunResponse)
async def run_program(request: RunRequest):
    """Parse and evaluate a program; partial answers come back with timed_out set"""
    started = time.perf_counter()
    try:
        response = await asyncio.to_thread(_run_program, request)
    except ParseError as e:
        logger.warning(f"Rejected program: {e}")
        raise HTTPException(status_code=400, detail=f"Parse error at {e}")
    except KanrenError as e:
        logger.warning(f"Program error: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except RecursionError:
        raise HTTPException(status_code=400, detail="Recursion limit exceeded while evaluating the program")

    response.elapsed_ms = round((time.perf_counter() - started) * 1000, 3)
    logger.info(
        f"Ran {len(response.results)} query(ies) on {response.system} in {response.elapsed_ms} ms"
        f"{' (timed out)' if response.timed_out else ''}"
    )
    return response


@router.post("/parse", response_model=ParseResponse)
async def parse_program(request: ParseRequest):
    """Parse a program and return its AST and canonical text"""
    try:
        program = parse(request.source, get_system(request.system.value))
    except ParseError as e:
        logger.warning(f"Rejected program: {e}")
        raise HTTPException(status_code=400, detail=f"Parse error at {e}")
    return ParseResponse(program=program, canonical=format_program(program))
