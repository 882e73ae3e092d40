from typing import List, Optional
import os

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel

from discriminators.verification import TARGETS, VerificationReport, build_grid, grid_size, run_suite
from utils.errors import UsageError

router = APIRouter(prefix="/verify", tags=["Verification"])

# Smaller than the CLI cap: a request blocks a worker thread until the grid finishes.
API_MAX_CHECKS = int(os.getenv("API_MAX_CHECKS", "100000"))


class GridOverrides(BaseModel):
    t: Optional[List[int]] = None
    a: Optional[List[int]] = None
    c: Optional[List[int]] = None
    n_max: Optional[int] = None
    k_max: Optional[int] = None
    start_max: Optional[int] = None
    m_limit: Optional[int] = None
    scales: Optional[List[int]] = None
    linear_a: Optional[List[int]] = None
    linear_b: Optional[List[int]] = None


@router.get("/targets")
def list_targets():
    return {"targets": list(TARGETS)}


@router.post("/{target}", response_model=VerificationReport)
def verify_target(target: str, overrides: Optional[GridOverrides] = None):
    try:
        grid = build_grid(target, overrides.model_dump() if overrides else None)
    except UsageError as e:
        raise HTTPException(status_code=404, detail=str(e))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))

    planned = grid_size(target, grid)
    if planned > API_MAX_CHECKS:
        raise HTTPException(
            status_code=413,
            detail=f"grid has {planned} checks, above the service limit of {API_MAX_CHECKS}",
        )
    return run_suite(target, grid, max_checks=API_MAX_CHECKS)
