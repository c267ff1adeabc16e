from fastapi import APIRouter, Depends, HTTPException, status
from pydantic import ValidationError

from forms.analytics_forms import HitProbQuery, LawQuery, ScalingQuery
from schemas.analytics import HitProbResult, LawResponse
from schemas.law import Classification
from services.classifier_service import classify_with_checks
from services.hitting_service import evaluate_hitting
from services.law_service import law_table
from utils.errors import SirsError


router = APIRouter(prefix="/analytics", tags=['Analytics'])


def _unprocessable(exc: Exception) -> HTTPException:
    if isinstance(exc, ValidationError):
        detail = exc.errors(include_url=False, include_context=False)
    else:
        detail = str(exc)
    return HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=detail)


@router.get("/classify", response_model=Classification)
async def classify(query: ScalingQuery = Depends()) -> Classification:
    """Case label of a power-law scaling with the conditions checked."""
    try:
        return classify_with_checks(query.to_spec())
    except (ValidationError, ValueError, SirsError) as exc:
        raise _unprocessable(exc)


@router.get("/law", response_model=LawResponse)
async def law(query: LawQuery = Depends()) -> LawResponse:
    """CDF and density of a limit law at the requested times."""
    try:
        return law_table(query.to_law(), query.t)
    except (ValidationError, ValueError, SirsError) as exc:
        raise _unprocessable(exc)


@router.get("/hitprob", response_model=HitProbResult)
async def hitprob(query: HitProbQuery = Depends()) -> HitProbResult:
    """Hitting probability or bound, with the linear-system value when there is one."""
    try:
        return evaluate_hitting(
            query.kind, beta=query.beta, start=query.start, barrier=query.barrier,
            alpha=query.alpha, mu=query.mu, l=query.l, t0=query.t0,
        )
    except (ValidationError, ValueError, SirsError) as exc:
        raise _unprocessable(exc)
