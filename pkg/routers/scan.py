import os

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field

from discriminators.scan import ScanReport, scan_shifts
from routers.disc import FamilySpec, build_handle
from utils.errors import DomainError, UsageError
from utils.ranges import parse_int_grid

router = APIRouter(tags=["Discriminators"])

API_MAX_CHECKS = int(os.getenv("API_MAX_CHECKS", "100000"))


class ScanRequest(BaseModel):
    sequence: FamilySpec
    shifts: str = "0..8"
    n_max: int = Field(default=64, ge=1)


@router.post("/scan", response_model=ScanReport)
def scan_family(request: ScanRequest):
    try:
        shifts = parse_int_grid(request.shifts)
    except UsageError as e:
        raise HTTPException(status_code=400, detail=str(e))
    if len(shifts) * request.n_max > API_MAX_CHECKS:
        raise HTTPException(status_code=413, detail=f"scan above the service limit of {API_MAX_CHECKS}")
    handle = build_handle(request.sequence)
    try:
        return scan_shifts(handle, shifts, request.n_max)
    except DomainError as e:
        raise HTTPException(status_code=400, detail=str(e))
