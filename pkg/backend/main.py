from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from contextlib import asynccontextmanager
import logging
import sys

import config
from routes import queries, systems
from utils.stdlib import SYSTEMS, get_system

config.configure_logging(logging.INFO)
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    sys.setrecursionlimit(max(sys.getrecursionlimit(), config.RECURSION_LIMIT))
    # warm the cached systems
    for name in SYSTEMS:
        logger.info(f"Constraint system ready: {get_system(name).name}")
    yield


app = FastAPI(
    title="microKanren CLP",
    description="Constraint microKanren with designer-supplied violation predicates",
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=config.get_cors_origins(),
    allow_credentials=True,
    allow_methods=["GET", "POST", "OPTIONS"],
    allow_headers=["*"],
)

app.include_router(queries.router, prefix="/api/queries", tags=["queries"])
app.include_router(systems.router, prefix="/api/systems", tags=["systems"])


@app.get("/")
async def root():
    return {"message": "microKanren CLP API"}


@app.get("/api/health")
async def health():
    """Health check endpoint"""
    return {"status": "ok", "routes": ["/api/queries", "/api/systems"]}


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
