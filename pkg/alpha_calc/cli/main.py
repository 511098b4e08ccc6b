"""
Command line front end
"""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Dict, List, Literal, Sequence, Tuple

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
    TypeAdapter,
    ValidationError,
    field_validator,
    model_validator,
)

from ..alpha import (
    ORACLE_MAX_K,
    alpha_k,
    alpha_sequence,
    closed_form,
    infimum,
    oracle_alpha_k,
    paper_certificate,
    verify_certificate,
)
from ..ample import nakai_moishezon_check
from ..builder import SurfaceModel, divisor_class
from ..errors import AlphaCalcError, UnknownLabelError
from ..lattice import DivisorClass
from ..lct import EffectiveDivisor
from ..typing import Rational
from .report import (
    AlphaReport,
    CertificateRow,
    OracleRow,
    OutputFormat,
    render_alpha,
    render_ample,
    render_build,
    render_oracle,
    render_verify,
    scope_label,
)
from .spec import NamedDivisors, bundled_spec_text, parse_surface_spec

logger = logging.getLogger(__name__)

Command = Literal["build", "ample", "alpha", "verify", "oracle"]
COMMANDS: Tuple[str, ...] = ("build", "ample", "alpha", "verify", "oracle")
THREADS_VARIABLE = "ALPHACALC_THREADS"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2


def _workers_from_env() -> str:
    return os.environ.get(THREADS_VARIABLE, "1")


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    command: Command
    spec_path: Path | None = None
    divisor_label: str = "L"
    k_range: Tuple[PositiveInt, PositiveInt] = (1, 20)
    output_format: OutputFormat = "text"
    output_path: Path | None = None
    certificate_path: Path | None = None
    curve_labels: Tuple[str, ...] | None = None
    expect_paper: bool = False
    workers: PositiveInt = Field(default_factory=_workers_from_env, validate_default=True)
    verbosity: NonNegativeInt = 0

    @field_validator("k_range", mode="before")
    @classmethod
    def parse_k_range(cls, value: object) -> object:
        if isinstance(value, int):
            return (value, value)
        if isinstance(value, str):
            low, _, high = value.partition("..")
            return (low.strip(), (high or low).strip())
        return value

    @model_validator(mode="after")
    def check_k_range(self) -> Self:
        if self.k_range[0] > self.k_range[1]:
            raise ValueError(f"empty k range {self.k_range[0]}..{self.k_range[1]}")
        return self

    @property
    def ks(self) -> range:
        return range(self.k_range[0], self.k_range[1] + 1)


class Certificate(BaseModel):
    """
    k and a witness {label: "p/q"}, as found in alpha json reports
    """

    k: PositiveInt
    witness: Dict[str, Rational]

    def divisor(self) -> EffectiveDivisor:
        return EffectiveDivisor(coefficients=self.witness)


class _AlphaDump(BaseModel):
    results: List[Certificate]


_CERTIFICATES: TypeAdapter[_AlphaDump | List[Certificate] | Certificate] = TypeAdapter(
    _AlphaDump | List[Certificate] | Certificate
)


def load_certificates(path: Path) -> List[Certificate]:
    parsed = _CERTIFICATES.validate_json(path.read_text(encoding="utf-8"))
    if isinstance(parsed, _AlphaDump):
        return parsed.results
    return parsed if isinstance(parsed, list) else [parsed]


def load_spec_text(path: Path | None) -> str:
    """
    Read a surface description, a missing file named like a bundled one falls
    back to the bundled copy
    """
    if path is None:
        return bundled_spec_text()
    if not path.exists() and path.parent == Path("."):
        try:
            return bundled_spec_text(path.name)
        except FileNotFoundError:
            pass
    return path.read_text(encoding="utf-8")


def _curve_labels(config: RunConfig, model: SurfaceModel) -> Tuple[str, ...]:
    if config.curve_labels is not None:
        return config.curve_labels
    if model.torus_curves is not None:
        return model.torus_curves
    return tuple(model.curves)


def _ample_labels(config: RunConfig, model: SurfaceModel) -> Tuple[str, ...]:
    # every named curve unless overridden
    if config.curve_labels is not None:
        return config.curve_labels
    return tuple(model.curves)


def _divisor(config: RunConfig, model: SurfaceModel, divisors: NamedDivisors) -> DivisorClass:
    if config.divisor_label not in divisors:
        raise UnknownLabelError(config.divisor_label)
    return divisor_class(model, divisors[config.divisor_label])


def _run_ample(
    config: RunConfig, model: SurfaceModel, divisors: NamedDivisors
) -> Tuple[int, str]:
    report = nakai_moishezon_check(
        model, _divisor(config, model, divisors), _ample_labels(config, model)
    )
    if not report.passed:
        logger.warning("ampleness check failed: %s", ", ".join(report.failures))
    status = EXIT_OK if report.passed else EXIT_CHECK_FAILED
    return status, render_ample(report, config.output_format)


def _run_alpha(
    config: RunConfig, model: SurfaceModel, divisors: NamedDivisors
) -> Tuple[int, str]:
    labels = _curve_labels(config, model)
    results = alpha_sequence(
        model, labels, _divisor(config, model, divisors), config.ks, config.workers
    )
    matches = None
    if config.expect_paper:
        matches = tuple(r.alpha_k == closed_form(r.k) for r in results)
    low, attained = infimum(results)
    report = AlphaReport(
        divisor=config.divisor_label,
        scope=scope_label(labels),
        results=tuple(results),
        matches_closed_form=matches,
        infimum=low,
        infimum_attained_at=tuple(attained),
    )
    if matches is not None and not all(matches):
        logger.warning("alpha_k differs from the closed form")
        return EXIT_CHECK_FAILED, render_alpha(report, config.output_format)
    return EXIT_OK, render_alpha(report, config.output_format)


def _run_verify(
    config: RunConfig, model: SurfaceModel, divisors: NamedDivisors
) -> Tuple[int, str]:
    divisor = _divisor(config, model, divisors)
    if config.certificate_path is not None:
        certificates = [(c.k, c.divisor()) for c in load_certificates(config.certificate_path)]
    else:
        certificates = [(k, paper_certificate(k)) for k in config.ks]
    rows: List[CertificateRow] = []
    for k, certificate in certificates:
        check = verify_certificate(model, certificate, k, divisor)
        bound = None if check.lct.is_infinite else k * check.lct.value
        rows.append(
            CertificateRow(
                k=k,
                check=check,
                alpha_k_bound=bound,
                matches_closed_form=bound == closed_form(k) if config.expect_paper else None,
            )
        )
    failed = [
        row.k for row in rows if not row.check.equivalent or row.matches_closed_form is False
    ]
    if failed:
        logger.warning("certificate check failed for k = %s", failed)
    status = EXIT_CHECK_FAILED if failed else EXIT_OK
    return status, render_verify(rows, config.output_format)


def _run_oracle(
    config: RunConfig, model: SurfaceModel, divisors: NamedDivisors
) -> Tuple[int, str]:
    labels = _curve_labels(config, model)
    divisor = _divisor(config, model, divisors)
    rows: List[OracleRow] = []
    for k in config.ks:
        fast = alpha_k(model, labels, divisor, k)
        slow = oracle_alpha_k(model, labels, divisor, k, max_k=ORACLE_MAX_K)
        rows.append(
            OracleRow(
                k=k,
                alpha_k=fast.alpha_k,
                oracle_alpha_k=slow.alpha_k,
                same_witness=fast.witness == slow.witness,
            )
        )
        logger.info("oracle k=%d: %s vs %s", k, fast.alpha_k, slow.alpha_k)
    failed = [row.k for row in rows if not row.agrees]
    if failed:
        logger.warning("oracle disagrees for k = %s", failed)
    status = EXIT_CHECK_FAILED if failed else EXIT_OK
    return status, render_oracle(rows, config.output_format)


def _emit(config: RunConfig, text: str) -> None:
    if config.output_path is None:
        sys.stdout.write(text)
    else:
        config.output_path.write_text(text, encoding="utf-8")


def run(config: RunConfig) -> int:
    """
    Execute one command, write its report and return the exit status
    """
    try:
        model, divisors = parse_surface_spec(load_spec_text(config.spec_path))
        if config.command == "build":
            status, text = EXIT_OK, render_build(model, divisors, config.output_format)
        else:
            handler = {
                "ample": _run_ample,
                "alpha": _run_alpha,
                "verify": _run_verify,
                "oracle": _run_oracle,
            }[config.command]
            status, text = handler(config, model, divisors)
    except (AlphaCalcError, ValidationError, OSError) as error:
        logger.error("%s", error)
        return EXIT_INVALID
    _emit(config, text)
    return status


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alpha-calc",
        description="Exact alpha_k invariants of polarized blow-ups of Hirzebruch surfaces",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument(
        "--spec", dest="spec_path", help="surface description (default: bundled reference surface)"
    )
    parser.add_argument("--divisor", dest="divisor_label", help="named divisor (default: L)")
    parser.add_argument("--k", dest="k_range", help="k or an inclusive range a..b (default: 1..20)")
    parser.add_argument("--format", dest="output_format", choices=("json", "csv", "text"))
    parser.add_argument("-o", "--output", dest="output_path", help="write the report to a file")
    parser.add_argument("--certificate", dest="certificate_path", help="certificate file (verify)")
    parser.add_argument("--curves", dest="curve_labels", help="comma separated curve labels")
    parser.add_argument(
        "--expect-paper",
        dest="expect_paper",
        action="store_true",
        default=None,
        help="compare with the closed form of the bundled reference surface",
    )
    parser.add_argument(
        "--workers", type=int, help=f"worker processes (default: {THREADS_VARIABLE} or 1)"
    )
    parser.add_argument("-v", "--verbose", dest="verbosity", action="count", default=0)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None) -> int:
    arguments = vars(_parser().parse_args(argv))
    _configure_logging(arguments["verbosity"])
    if arguments["curve_labels"] is not None:
        arguments["curve_labels"] = tuple(
            label.strip() for label in arguments["curve_labels"].split(",") if label.strip()
        )
    try:
        config = RunConfig(**{key: value for key, value in arguments.items() if value is not None})
    except ValidationError as error:
        logger.error("%s", error)
        return EXIT_INVALID
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
