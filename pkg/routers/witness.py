from fastapi import APIRouter, HTTPException
from pydantic import BaseModel

from discriminators.exact import CollisionWitness, collision_witness
from utils.errors import DomainError

router = APIRouter(tags=["Witnesses"])


class WitnessRequest(BaseModel):
    t: int
    k: int
    m: int


@router.post("/witness", response_model=CollisionWitness)
def build_witness(request: WitnessRequest):
    try:
        return collision_witness(request.t, request.k, request.m)
    except DomainError as e:
        raise HTTPException(status_code=400, detail=str(e))
