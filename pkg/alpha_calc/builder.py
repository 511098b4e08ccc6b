"""
Blow-up calculus on Hirzebruch surfaces, tracking named curve classes
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import Annotated, Dict, List, Literal, Mapping, Tuple, Union

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveInt,
    model_validator,
    validate_call,
)
from sympy import Matrix

from .errors import (
    DegenerateFormError,
    DuplicateLabelError,
    NonIntegralError,
    RealizabilityError,
    UnknownLabelError,
)
from .lattice import DivisorClass, IntersectionForm, pairing, solve_integer_system
from .typing import IntMatrix, IntVector
from .utils import is_integral, mat_mul, transpose

logger = logging.getLogger(__name__)

Label = Annotated[str, Field(pattern=r"^[A-Za-z_][A-Za-z0-9_]*$")]


class HirzebruchBase(BaseModel):
    """
    Base surface F_n with the labels of its section Z_n, fiber F and negative section
    """

    model_config = ConfigDict(frozen=True)

    n: NonNegativeInt
    section: Label
    fiber: Label
    negative: Label


class CurveStep(BaseModel):
    """
    Declaration of a named curve as an integer combination of named curves
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["curve"] = "curve"
    label: Label
    combination: Tuple[Tuple[Label, int], ...]


class BlowUpSpec(BaseModel):
    """
    Blow-up of a point given by the named curves through it, with multiplicities
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["blowup"] = "blowup"
    through: Tuple[Tuple[Label, PositiveInt], ...] = ()
    new_label: Label

    @model_validator(mode="after")
    def check_distinct(self) -> Self:
        labels = [label for label, _ in self.through]
        for label in labels:
            if labels.count(label) > 1:
                raise ValueError(f"curve {label!r} listed twice in blow-up")
        return self


ConstructionStep = Annotated[Union[CurveStep, BlowUpSpec], Field(discriminator="kind")]


class SurfaceModel(BaseModel):
    """
    Picard lattice of a blown-up Hirzebruch surface in the pullback basis
    [Z, F, e1, ..., em], with named curve classes (proper transforms).
    """

    model_config = ConfigDict(frozen=True)

    base: HirzebruchBase
    basis_labels: Tuple[str, ...]
    form: IntersectionForm
    curves: Dict[str, DivisorClass]
    steps: Tuple[ConstructionStep, ...] = ()
    report_basis: Tuple[str, ...] | None = None
    torus_curves: Tuple[str, ...] | None = None
    assertions: Tuple[str, ...] = ()

    @model_validator(mode="after")
    def check_lattice(self) -> Self:
        rank = len(self.basis_labels)
        if self.form.rank != rank:
            raise ValueError(f"form of rank {self.form.rank} on a basis of rank {rank}")
        for label, cls in self.curves.items():
            if cls.rank != rank or cls.basis_id != self.form.basis_id:
                raise ValueError(f"class of {label!r} does not live on the model basis")
        if Matrix(self.form.matrix).det() == 0:
            raise DegenerateFormError("intersection form is degenerate")
        return self

    @property
    def rank(self) -> int:
        return len(self.basis_labels)

    @property
    def basis_id(self) -> str:
        return self.form.basis_id

    @property
    def blowups(self) -> List[BlowUpSpec]:
        return [step for step in self.steps if isinstance(step, BlowUpSpec)]

    def curve(self, label: str) -> DivisorClass:
        if label not in self.curves:
            raise UnknownLabelError(label)
        return self.curves[label]

    def pair(self, left: DivisorClass, right: DivisorClass) -> int:
        return pairing(self.form, left, right)


def _basis_id(n: int, blowups: int) -> str:
    return f"F{n}+{blowups}"


@validate_call
def hirzebruch(
    n: NonNegativeInt,
    section: Label | None = None,
    fiber: Label = "F",
    negative: Label = "Zneg",
) -> SurfaceModel:
    """
    Hirzebruch surface F_n, basis [Z_n, F] with form ((n, 1), (1, 0))
    """
    base = HirzebruchBase(n=n, section=section or f"Z{n}", fiber=fiber, negative=negative)
    labels = [base.section, base.fiber, base.negative]
    for label in labels:
        if labels.count(label) > 1:
            raise DuplicateLabelError(label)
    basis_id = _basis_id(n, 0)
    return SurfaceModel(
        base=base,
        basis_labels=("Z", "F"),
        form=IntersectionForm(matrix=((n, 1), (1, 0)), basis_id=basis_id),
        curves={
            base.section: DivisorClass(coefficients=(1, 0), basis_id=basis_id),
            base.fiber: DivisorClass(coefficients=(0, 1), basis_id=basis_id),
            base.negative: DivisorClass(coefficients=(1, -n), basis_id=basis_id),
        },
    )


def _combine(model: SurfaceModel, combination: Mapping[str, int]) -> DivisorClass:
    out = DivisorClass.zero(model.rank, model.basis_id)
    for label, coefficient in combination.items():
        out = out + coefficient * model.curve(label)
    return out


def add_curve(model: SurfaceModel, label: str, combination: Mapping[str, int]) -> SurfaceModel:
    """
    Declare a new named curve whose class is an integer combination of named curves
    """
    if label in model.curves:
        raise DuplicateLabelError(label)
    step = CurveStep(label=label, combination=tuple(combination.items()))
    cls = _combine(model, combination)
    return model.model_copy(
        update={
            "curves": {**model.curves, label: cls},
            "steps": model.steps + (step,),
        }
    )


def blow_up(model: SurfaceModel, spec: BlowUpSpec) -> SurfaceModel:
    """
    Blow up a point lying on the curves of spec.through with the given multiplicities.
    """
    for label, _ in spec.through:
        model.curve(label)
    if spec.new_label in model.curves:
        raise DuplicateLabelError(spec.new_label)

    # two curves through the point must still meet nonnegatively after the blow-up
    for (first, m1), (second, m2) in combinations(spec.through, 2):
        current = model.pair(model.curve(first), model.curve(second))
        if current < m1 * m2:
            raise RealizabilityError(first, second, current, m1 * m2)

    count = len(model.blowups) + 1
    rank = model.rank + 1
    basis_id = _basis_id(model.base.n, count)
    matrix = [list(row) + [0] for row in model.form.matrix] + [[0] * model.rank + [-1]]
    multiplicities = dict(spec.through)
    curves = {
        label: DivisorClass(
            coefficients=cls.coefficients + (-multiplicities.get(label, 0),),
            basis_id=basis_id,
        )
        for label, cls in model.curves.items()
    }
    curves[spec.new_label] = DivisorClass.unit(rank - 1, rank, basis_id)
    logger.debug(
        "blow-up %s through %s, rank %d", spec.new_label, dict(spec.through), rank
    )
    return model.model_copy(
        update={
            "basis_labels": model.basis_labels + (f"e{count}",),
            "form": IntersectionForm(
                matrix=tuple(tuple(row) for row in matrix), basis_id=basis_id
            ),
            "curves": curves,
            "steps": model.steps + (spec,),
        }
    )


def _report_matrix_columns(model: SurfaceModel) -> IntMatrix:
    if model.report_basis is None:
        return [[int(i == j) for j in range(model.rank)] for i in range(model.rank)]
    return transpose([list(model.curve(label).coefficients) for label in model.report_basis])


def with_report_basis(model: SurfaceModel, labels: List[str]) -> SurfaceModel:
    """
    Select named curves forming a unimodular basis used for reporting
    """
    for label in labels:
        model.curve(label)
    if len(set(labels)) != len(labels):
        raise DuplicateLabelError(next(x for x in labels if labels.count(x) > 1))
    if len(labels) != model.rank:
        raise DegenerateFormError(
            f"report basis has {len(labels)} classes, lattice rank is {model.rank}"
        )
    columns = transpose([list(model.curve(label).coefficients) for label in labels])
    if abs(Matrix(columns).det()) != 1:
        raise DegenerateFormError("report basis is not a basis of the lattice")
    return model.model_copy(update={"report_basis": tuple(labels)})


def report_labels(model: SurfaceModel) -> Tuple[str, ...]:
    return model.report_basis if model.report_basis is not None else model.basis_labels


def report_matrix(model: SurfaceModel) -> IntMatrix:
    """
    Intersection matrix P^T Q P on the report basis
    """
    p = _report_matrix_columns(model)
    return mat_mul(mat_mul(transpose(p), model.form.matrix), p)


def report_coordinates(model: SurfaceModel, cls: DivisorClass) -> IntVector:
    """
    Coordinates of a class in the report basis
    """
    if model.report_basis is None:
        return list(cls.coefficients)
    return solve_integer_system(_report_matrix_columns(model), cls.coefficients).particular


def with_torus_curves(model: SurfaceModel, labels: List[str]) -> SurfaceModel:
    for label in labels:
        model.curve(label)
    return model.model_copy(update={"torus_curves": tuple(labels)})


def with_assertion(model: SurfaceModel, text: str) -> SurfaceModel:
    return model.model_copy(update={"assertions": model.assertions + (text,)})


def self_intersections(model: SurfaceModel) -> Dict[str, int]:
    return {label: model.pair(cls, cls) for label, cls in model.curves.items()}


def rational_class(
    model: SurfaceModel, combination: Mapping[str, Fraction | int]
) -> List[Fraction]:
    """
    Rational coefficient vector of a combination of named curves
    """
    out = [Fraction(0)] * model.rank
    for label, coefficient in combination.items():
        out = [
            x + Fraction(coefficient) * y
            for x, y in zip(out, model.curve(label).coefficients)
        ]
    return out


def divisor_class(model: SurfaceModel, combination: Mapping[str, Fraction | int]) -> DivisorClass:
    """
    Integer class of a combination of named curves with integral coefficients
    """
    for label, coefficient in combination.items():
        model.curve(label)
        if not is_integral(Fraction(coefficient)):
            raise NonIntegralError(label)
    return _combine(model, {k: int(v) for k, v in combination.items()})


PAPER_TORUS_CURVES: Tuple[str, ...] = (
    "Zt2", "Ztm2", "Et1", "Et2", "Et3", "Et4", "Ft1", "Ft2", "Ft3", "Ft4", "E1", "E2",
)  # fmt: skip
PAPER_REPORT_BASIS: Tuple[str, ...] = ("Zt2", "Ft", "Et1", "Et2", "Et3", "Et4", "E1", "E2")
PAPER_POLARIZATION: Dict[str, Fraction] = {
    label: Fraction(coefficient)
    for label, coefficient in (
        ("Zt2", 2), ("Ztm2", 2), ("Ft", 3), ("Et1", 1), ("Ft1", 1), ("E1", 1),
        ("Et2", 1), ("Ft2", 1), ("E2", 1),
    )
}  # fmt: skip
PAPER_ASSERTIONS: Tuple[str, ...] = (
    "curve list complete for Nakai-Moishezon: a curve outside Supp L meets Zt2, Ztm2 or Ft",
    "configuration of the torus-invariant curves is simple normal crossing",
)


def paper_surface() -> Tuple[SurfaceModel, DivisorClass]:
    """
    F_2 blown up at four points of Z_2, then at Et1 n Ft1 and Et2 n Ft2,
    with the polarization L = 2Zt2 + 2Ztm2 + 3Ft + Et1 + Ft1 + E1 + Et2 + Ft2 + E2
    """
    model = hirzebruch(2, section="Zt2", fiber="Ft", negative="Ztm2")
    for i in range(1, 5):
        model = add_curve(model, f"Ft{i}", {"Ft": 1})
    for i in range(1, 5):
        model = blow_up(
            model, BlowUpSpec(through=(("Zt2", 1), (f"Ft{i}", 1)), new_label=f"Et{i}")
        )
    for i in range(1, 3):
        model = blow_up(
            model, BlowUpSpec(through=((f"Et{i}", 1), (f"Ft{i}", 1)), new_label=f"E{i}")
        )
    model = with_report_basis(model, list(PAPER_REPORT_BASIS))
    model = with_torus_curves(model, list(PAPER_TORUS_CURVES))
    for text in PAPER_ASSERTIONS:
        model = with_assertion(model, text)
    return model, divisor_class(model, PAPER_POLARIZATION)
