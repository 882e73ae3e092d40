from typing import List, Literal, Optional
import os

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field

from discriminators.engine import DiscriminatorRecord, discriminator_profile, window_discriminator
from discriminators.exact import closed_form_discriminator
from discriminators.families import SequenceHandle, make_sequence
from utils.errors import DomainError

router = APIRouter(tags=["Discriminators"])

# --- Configuration ---
API_MAX_N = int(os.getenv("API_MAX_N", "4096"))


class FamilySpec(BaseModel):
    family: Literal["exp", "squares", "linear", "quadratic"]
    t: Optional[int] = None
    a: Optional[int] = None
    b: Optional[int] = None
    k: Optional[int] = None
    c1: Optional[int] = None
    b1: Optional[int] = None
    scale: Optional[int] = None
    c: int = 0


class DiscRequest(BaseModel):
    sequence: FamilySpec
    n: Optional[int] = Field(default=None, ge=1)
    n_max: Optional[int] = Field(default=None, ge=1)
    start: int = Field(default=0, ge=0)
    mode: Literal["brute", "closed"] = "brute"


class DiscResponse(BaseModel):
    sequence: dict
    records: List[DiscriminatorRecord]


def build_handle(spec: FamilySpec) -> SequenceHandle:
    """Translate a family body into a handle; bad parameters become a 400."""
    try:
        return make_sequence(
            spec.family,
            c=spec.c,
            scale=spec.scale,
            t=spec.t, a=spec.a, b=spec.b, k=spec.k, c1=spec.c1, b1=spec.b1,
        )
    except DomainError as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/disc", response_model=DiscResponse)
def compute_discriminator(request: DiscRequest):
    if (request.n is None) == (request.n_max is None):
        raise HTTPException(status_code=400, detail="Provide exactly one of n or n_max")
    size = request.n or request.n_max
    if size > API_MAX_N:
        raise HTTPException(status_code=413, detail=f"n above the service limit of {API_MAX_N}")

    handle = build_handle(request.sequence)
    if request.mode == "closed":
        scale = request.sequence.scale
        if request.sequence.family != "exp" or (scale is not None and scale % 2 == 0) or request.start:
            raise HTTPException(status_code=400, detail="closed mode is only valid for exp prefixes")
        ns = [request.n] if request.n else range(1, request.n_max + 1)
        records = [DiscriminatorRecord(n=n, d=closed_form_discriminator(n)) for n in ns]
    elif request.n is not None:
        records = [window_discriminator(handle, request.start, request.n)]
    else:
        records = discriminator_profile(handle, request.n_max, start=request.start)
    return DiscResponse(sequence=handle.describe(), records=records)
