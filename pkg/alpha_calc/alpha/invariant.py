"""
Quantized alpha-invariants over a declared family of torus-invariant curves
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import partial
from typing import Dict, Iterable, List, Sequence, Tuple

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, PositiveInt, field_serializer, model_validator

from ..builder import SurfaceModel, rational_class
from ..errors import BasisMismatchError, InfeasibleError
from ..lattice import DivisorClass
from ..lct import EffectiveDivisor, LctValue, lct_snc
from ..typing import Rational
from ..utils import format_rational
from .bnb import derive_box, ilp_max
from .problem import build_constraints

logger = logging.getLogger(__name__)

DEFAULT_K_RANGE = range(1, 21)


class AlphaResult(BaseModel):
    """
    alpha_k = k / m_star, m_star being the largest coefficient an effective
    combination of the curve family equivalent to k L is forced to reach.
    """

    model_config = ConfigDict(frozen=True)

    k: PositiveInt
    alpha_k: Rational
    m_star: PositiveInt
    achieved_by: str
    witness: EffectiveDivisor

    @model_validator(mode="after")
    def check_consistency(self) -> Self:
        if self.alpha_k * self.m_star != self.k:
            raise ValueError(f"alpha_k * m_star = {self.alpha_k * self.m_star} != k = {self.k}")
        if self.witness.max_coefficient() != self.m_star:
            raise ValueError("witness does not reach m_star")
        if self.witness.coefficients.get(self.achieved_by) != self.m_star:
            raise ValueError(f"{self.achieved_by!r} does not carry the maximal coefficient")
        return self

    @field_serializer("witness", when_used="json")
    def serialize_witness(self, witness: EffectiveDivisor) -> Dict[str, str]:
        return {label: format_rational(value) for label, value in witness.coefficients.items()}


class CertificateCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    equivalent: bool
    lct: LctValue


def closed_form(k: int) -> Fraction:
    """
    alpha_k of the reference surface: 1/8 for even k, k/(8k-1) for odd k
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return Fraction(1, 8) if k % 2 == 0 else Fraction(k, 8 * k - 1)


def paper_certificate(k: int) -> EffectiveDivisor:
    """
    Explicit divisor equivalent to k L on the reference surface with lct 1/(8k) for
    even k and 1/(8k-1) for odd k
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if k % 2 == 0:
        coefficients = {
            "Zt2": 2 * k, "Ztm2": 2 * k, "Et1": 9 * k // 2, "Ft1": 9 * k // 2,
            "E1": 8 * k, "Et2": k // 2, "Ft2": k // 2,
        }  # fmt: skip
    else:
        coefficients = {
            "Zt2": 2 * k, "Ztm2": 2 * k, "Et1": (9 * k - 1) // 2, "Ft1": (9 * k - 1) // 2,
            "E1": 8 * k - 1, "Et2": (k + 1) // 2, "Ft2": (k + 1) // 2, "E2": 1,
        }  # fmt: skip
    return EffectiveDivisor(coefficients={k_: Fraction(v) for k_, v in coefficients.items()})


def verify_certificate(
    model: SurfaceModel, divisor: EffectiveDivisor, k: int, polarization: DivisorClass
) -> CertificateCheck:
    """
    Check sum a_i [C_i] = k [L] exactly and compute the lct of the certificate
    """
    if polarization.basis_id != model.basis_id:
        raise BasisMismatchError(model.basis_id, polarization.basis_id)
    vector = rational_class(model, divisor.coefficients)
    target = [k * Fraction(x) for x in polarization.coefficients]
    return CertificateCheck(equivalent=vector == target, lct=lct_snc(divisor))


def alpha_k(
    model: SurfaceModel, curve_labels: Sequence[str], divisor: DivisorClass, k: int
) -> AlphaResult:
    """
    alpha_k restricted to divisors supported on the curve family: one integer
    program per curve maximizing its coefficient.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    problems = build_constraints(model, curve_labels, divisor, k)
    box = derive_box(problems[0])

    # value, objective index, witness
    best: Tuple[int, int, Tuple[int, ...]] | None = None
    for j in sorted(range(len(problems)), key=lambda j: (-box[j], j)):
        if best is not None and (box[j] < best[0] or (box[j] == best[0] and j > best[1])):
            logger.debug("k=%d: skip %s, bound %d", k, curve_labels[j], box[j])
            continue
        boxed = problems[j].model_copy(update={"box_upper": box})
        solution = ilp_max(boxed, incumbent=best[2] if best is not None else None)
        if best is None or solution.optimum > best[0] or (
            solution.optimum == best[0] and j < best[1]
        ):
            best = (solution.optimum, j, solution.witness)
    assert best is not None
    m_star, index, witness = best
    if m_star == 0:
        raise InfeasibleError("integer", "k L is only represented by the zero divisor")

    result = AlphaResult(
        k=k,
        alpha_k=Fraction(k, m_star),
        m_star=m_star,
        achieved_by=curve_labels[index],
        witness=EffectiveDivisor(
            coefficients={label: Fraction(x) for label, x in zip(curve_labels, witness)}
        ),
    )
    assert verify_certificate(model, result.witness, k, divisor).equivalent
    logger.info("alpha_%d = %s (m*=%d on %s)", k, result.alpha_k, m_star, result.achieved_by)
    return result


def alpha_sequence(
    model: SurfaceModel,
    curve_labels: Sequence[str],
    divisor: DivisorClass,
    ks: Iterable[int] = DEFAULT_K_RANGE,
    workers: int = 1,
) -> List[AlphaResult]:
    """
    alpha_k for every k, in the order given; k values are independent and run
    in a process pool when workers > 1
    """
    ks = list(ks)
    compute = partial(alpha_k, model, tuple(curve_labels), divisor)
    if workers <= 1 or len(ks) <= 1:
        return [compute(k) for k in ks]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(compute, ks))


def infimum(results: Sequence[AlphaResult]) -> Tuple[Fraction, List[int]]:
    """
    Minimum of alpha_k over the computed range and the k values attaining it
    """
    if not results:
        raise ValueError("no results")
    low = min(result.alpha_k for result in results)
    return low, [result.k for result in results if result.alpha_k == low]
