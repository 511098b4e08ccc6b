"""
Surface description files: one `keyword: body` record per line, `#` comments
"""

import re
from fractions import Fraction
from importlib.resources import files
from typing import Callable, Dict, List, Mapping, Tuple

from pydantic import ValidationError

from ..builder import (
    BlowUpSpec,
    CurveStep,
    SurfaceModel,
    add_curve,
    blow_up,
    hirzebruch,
    rational_class,
    with_assertion,
    with_report_basis,
    with_torus_curves,
)
from ..errors import AlphaCalcError, DuplicateLabelError, SurfaceSpecError, UnknownLabelError

Combination = Dict[str, Fraction]
NamedDivisors = Dict[str, Combination]

PAPER_SPEC = "paper.surf"

_RECORD = re.compile(r"^(?P<key>[A-Za-z_]+)\s*:\s*(?P<body>.*?)\s*$")
_TOKEN = re.compile(
    r"\s*(?:(?P<sign>[+-])|(?P<coef>\d+(?:/\d+)?)|(?P<label>[A-Za-z_][A-Za-z0-9_]*)|(?P<other>\S))"
)
_LABEL = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_BASE_OPTIONS = ("section", "fiber", "negative")


def _words(body: str, column: int) -> List[Tuple[str, int]]:
    return [(m.group(), column + m.start()) for m in re.finditer(r"\S+", body)]


class _SpecParser:
    def __init__(self) -> None:
        self.model: SurfaceModel | None = None
        self.divisors: NamedDivisors = {}
        self.lineno = 0
        self.line = ""
        self.handlers: Dict[str, Callable[[str, int], None]] = {
            "base": self.on_base,
            "curve": self.on_curve,
            "blowup": self.on_blowup,
            "report": self.on_report,
            "torus": self.on_torus,
            "assert": self.on_assert,
            "divisor": self.on_divisor,
        }

    def error(self, column: int, message: str) -> SurfaceSpecError:
        return SurfaceSpecError(self.lineno, column, message)

    def column_of(self, label: str, default: int) -> int:
        found = re.search(rf"(?<![A-Za-z0-9_]){re.escape(label)}(?![A-Za-z0-9_])", self.line)
        return found.start() + 1 if found else default

    def feed(self, lineno: int, line: str) -> None:
        self.lineno, self.line = lineno, line
        if not line.strip() or line.lstrip().startswith("#"):
            return
        record = _RECORD.match(line)
        if record is None:
            raise self.error(1, "expected a `keyword: body` record")
        key = record.group("key")
        if key not in self.handlers:
            raise self.error(1, f"unknown record {key!r}")
        if self.model is None and key != "base":
            raise self.error(1, "the `base` record must come first")
        column = record.start("body") + 1
        try:
            self.handlers[key](record.group("body"), column)
        except SurfaceSpecError:
            raise
        except (UnknownLabelError, DuplicateLabelError) as error:
            raise self.error(self.column_of(error.label, column), str(error)) from error
        except (AlphaCalcError, ValidationError) as error:
            raise self.error(column, str(error)) from error

    @property
    def current(self) -> SurfaceModel:
        assert self.model is not None
        return self.model

    def on_base(self, body: str, column: int) -> None:
        if self.model is not None:
            raise self.error(1, "duplicate `base` record")
        words = _words(body, column)
        if len(words) < 2 or words[0][0] != "hirzebruch":
            raise self.error(column, "expected `hirzebruch <n>`")
        if not words[1][0].isdigit():
            raise self.error(words[1][1], f"invalid surface index {words[1][0]!r}")
        options: Dict[str, str] = {}
        for word, position in words[2:]:
            name, _, value = word.partition("=")
            if name not in _BASE_OPTIONS:
                raise self.error(position, f"unknown base option {name!r}")
            if not _LABEL.match(value):
                raise self.error(position, f"invalid label {value!r}")
            options[name] = value
        self.model = hirzebruch(int(words[1][0]), **options)

    def split_definition(self, body: str, column: int) -> Tuple[str, str, int]:
        label, equal, expression = body.partition("=")
        label = label.strip()
        if not equal or not _LABEL.match(label):
            raise self.error(column, "expected `<label> = <combination>`")
        return label, expression, column + len(body) - len(expression)

    def combination(self, text: str, column: int) -> Combination:
        out: Combination = {}
        tokens = [
            (m.lastgroup, m.group(m.lastgroup), column + m.start(m.lastgroup))
            for m in _TOKEN.finditer(text)
            if m.lastgroup is not None
        ]
        i = 0
        while i < len(tokens):
            sign = 1
            if tokens[i][0] == "sign":
                sign = -1 if tokens[i][1] == "-" else 1
                i += 1
            elif out:
                raise self.error(tokens[i][2], f"expected `+` or `-`, got {tokens[i][1]!r}")
            coefficient = Fraction(1)
            if i < len(tokens) and tokens[i][0] == "coef":
                try:
                    coefficient = Fraction(tokens[i][1])
                except ZeroDivisionError:
                    raise self.error(tokens[i][2], "zero denominator") from None
                i += 1
            if i >= len(tokens) or tokens[i][0] != "label":
                position = tokens[i][2] if i < len(tokens) else column + len(text)
                raise self.error(position, "expected a curve label")
            label = tokens[i][1]
            self.current.curve(label)
            out[label] = out.get(label, Fraction(0)) + sign * coefficient
            i += 1
        if not out:
            raise self.error(column, "empty combination")
        return out

    def on_curve(self, body: str, column: int) -> None:
        label, expression, position = self.split_definition(body, column)
        combination = self.combination(expression, position)
        for name, coefficient in combination.items():
            if coefficient.denominator != 1:
                raise self.error(self.column_of(name, position), "curve classes are integral")
        self.model = add_curve(
            self.current, label, {name: int(value) for name, value in combination.items()}
        )

    def on_blowup(self, body: str, column: int) -> None:
        match = re.match(r"^(?P<label>\S+)\s+through\b(?P<rest>.*)$", body)
        if match is None:
            raise self.error(column, "expected `<label> through <curve>[:<mult>], ...`")
        through: List[Tuple[str, int]] = []
        rest, offset = match.group("rest"), column + match.start("rest")
        if rest.strip():
            for item in rest.split(","):
                name, _, multiplicity = item.strip().partition(":")
                if not _LABEL.match(name) or (multiplicity and not multiplicity.isdigit()):
                    raise self.error(offset, f"invalid blow-up item {item.strip()!r}")
                through.append((name, int(multiplicity or 1)))
                offset += len(item) + 1
        spec = BlowUpSpec(through=tuple(through), new_label=match.group("label"))
        self.model = blow_up(self.current, spec)

    def labels(self, body: str, column: int) -> List[str]:
        labels = [word for word, _ in _words(body, column)]
        for word, position in _words(body, column):
            if labels.count(word) > 1:
                raise self.error(position, f"duplicate label: {word!r}")
        return labels

    def on_report(self, body: str, column: int) -> None:
        self.model = with_report_basis(self.current, self.labels(body, column))

    def on_torus(self, body: str, column: int) -> None:
        self.model = with_torus_curves(self.current, self.labels(body, column))

    def on_assert(self, body: str, column: int) -> None:
        if not body:
            raise self.error(column, "empty assertion")
        self.model = with_assertion(self.current, body)

    def on_divisor(self, body: str, column: int) -> None:
        label, expression, position = self.split_definition(body, column)
        if label in self.divisors:
            raise DuplicateLabelError(label)
        combination = self.combination(expression, position)
        rational_class(self.current, combination)
        self.divisors[label] = combination

    def finish(self) -> Tuple[SurfaceModel, NamedDivisors]:
        if self.model is None:
            raise SurfaceSpecError(max(self.lineno, 1), 1, "missing `base` record")
        return self.model, self.divisors


def parse_surface_spec(text: str) -> Tuple[SurfaceModel, NamedDivisors]:
    """
    Parse a surface description into the model and its named divisors
    """
    parser = _SpecParser()
    for lineno, line in enumerate(text.splitlines(), start=1):
        parser.feed(lineno, line)
    return parser.finish()


def format_combination(combination: Mapping[str, Fraction | int]) -> str:
    parts: List[str] = []
    for label, coefficient in combination.items():
        magnitude = abs(Fraction(coefficient))
        term = label if magnitude == 1 else f"{magnitude} {label}"
        if not parts:
            parts.append(f"-{term}" if coefficient < 0 else term)
        else:
            parts.append(f"{'-' if coefficient < 0 else '+'} {term}")
    return " ".join(parts)


def format_surface_spec(
    model: SurfaceModel, divisors: Mapping[str, Combination] | None = None
) -> str:
    """
    Render a model as a surface description, parse_surface_spec reads it back
    """
    base = model.base
    lines = [
        f"base: hirzebruch {base.n} section={base.section}"
        f" fiber={base.fiber} negative={base.negative}"
    ]
    for step in model.steps:
        if isinstance(step, CurveStep):
            lines.append(f"curve: {step.label} = {format_combination(dict(step.combination))}")
        else:
            through = ", ".join(
                label if multiplicity == 1 else f"{label}:{multiplicity}"
                for label, multiplicity in step.through
            )
            lines.append(f"blowup: {step.new_label} through {through}".rstrip())
    if model.report_basis is not None:
        lines.append("report: " + " ".join(model.report_basis))
    if model.torus_curves is not None:
        lines.append("torus: " + " ".join(model.torus_curves))
    lines.extend(f"assert: {text}" for text in model.assertions)
    for name, combination in (divisors or {}).items():
        lines.append(f"divisor: {name} = {format_combination(combination)}")
    return "\n".join(lines) + "\n"


def bundled_spec_text(name: str = PAPER_SPEC) -> str:
    return files("alpha_calc.data").joinpath(name).read_text(encoding="utf-8")
