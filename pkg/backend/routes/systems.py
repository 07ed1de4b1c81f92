from fastapi import APIRouter, HTTPException
from typing import List

from models import SystemInfo
from utils.errors import ConstraintSystemError
from utils.stdlib import SYSTEMS, get_system

router = APIRouter()


@router.get("/", response_model=List[SystemInfo])
async def list_systems():
    """Registered relations and violation predicates of every built-in system"""
    return [SystemInfo(**get_system(name).describe()) for name in SYSTEMS]


@router.get("/{name}", response_model=SystemInfo)
async def get_system_info(name: str):
    try:
        system = get_system(name)
    except ConstraintSystemError:
        raise HTTPException(status_code=404, detail=f"Constraint system '{name}' not found")
    return SystemInfo(**system.describe())
