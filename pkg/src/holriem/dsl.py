"""Line-oriented `.liealg` text format: parser, serializer, converters.

Format (one key per line, `#` starts a comment, whitespace insignificant):

    [algebra]
    name = sol3
    dim = 3
    basis = Y, Z, T

    [brackets]           # sparse: omitted entries are zero
    "Y,Z" = Z
    "Y,T" = - T

    [form]               # symmetric; keys are basis-label pairs
    "Y,Y" = 1
    "Z,T" = 1

    [isotropy]           # optional generators (gen, gen1, gen2, ...)
    gen = Y

    [expected]           # optional property assertions
    class = SOL

Scalars are Gaussian rationals: integers, fractions `a/b`, the imaginary
unit `i`, products, sums and parentheses, e.g. `1/2 + 3/4 i`.  Bracket and
isotropy values are linear combinations of declared basis labels.
Serialization is canonical (fixed section order, keys sorted, scalars in
lowest terms) and ``parse(serialize(s)) == s``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .forms import QuadraticForm
from .liealg import LieAlgebra
from .linalg import Vector, in_span
from .models import HomogeneousModel
from .scalars import GaussianRational, ONE, ZERO, gr


class DslError(ValueError):
    """Parse failure with 1-based line/column location."""

    def __init__(self, reason: str, line: int = 0, col: int = 0):
        self.reason = reason
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {reason}")


class UndeclaredLabel(DslError):
    pass


class DuplicateKey(DslError):
    pass


class MalformedScalar(DslError):
    pass


class MissingSection(DslError):
    pass


SECTION_ORDER = ("algebra", "brackets", "form", "isotropy", "expected")

_BOOL_KEYS = {"unimodular", "solvable", "nilpotent", "semisimple", "invariance"}
_INT_KEYS = {"center_dim", "invariant_form_dim"}
_TAG_KEYS = {"class", "isotropy"}

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_SECTION_RE = re.compile(r"^\[([A-Za-z_][A-Za-z0-9_]*)\]$")
_PAIR_KEY_RE = re.compile(
    r'^"\s*([A-Za-z_][A-Za-z0-9_\']*)\s*,\s*([A-Za-z_][A-Za-z0-9_\']*)\s*"$'
)


@dataclass(eq=True)
class SpecFile:
    """Parsed declarative description of an algebra with optional extras."""

    name: str
    labels: tuple[str, ...]
    brackets: dict[tuple[str, str], dict[str, GaussianRational]] = field(
        default_factory=dict
    )
    form: dict[tuple[str, str], GaussianRational] = field(default_factory=dict)
    isotropy: tuple[dict[str, GaussianRational], ...] = ()
    expected: dict[str, str] = field(default_factory=dict)


# -- scalar / combination expression parsing --------------------------------


class _Tokens:
    def __init__(self, text: str, line: int, col0: int):
        self.text = text
        self.line = line
        self.col0 = col0
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        self._skip_ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def col(self) -> int:
        return self.col0 + self.pos

    def take_char(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        return ch

    def take_number(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start : self.pos])

    def take_ident(self) -> str:
        self._skip_ws()
        match = _IDENT_RE.match(self.text, self.pos)
        if match is None:
            raise MalformedScalar("expected an identifier", self.line, self.col())
        self.pos = match.end()
        return match.group(0)

    def at_end(self) -> bool:
        return self.peek() is None

    def error(self, reason: str) -> MalformedScalar:
        return MalformedScalar(reason, self.line, self.col())


def _parse_factor(tk: _Tokens) -> GaussianRational:
    ch = tk.peek()
    if ch is None:
        raise tk.error("unexpected end of scalar expression")
    if ch == "-":
        tk.take_char()
        return -_parse_factor(tk)
    if ch == "(":
        tk.take_char()
        value = _parse_sum(tk)
        if tk.peek() != ")":
            raise tk.error("missing closing parenthesis")
        tk.take_char()
        return value
    if ch.isdigit():
        numerator = tk.take_number()
        if tk.peek() == "/":
            tk.take_char()
            if tk.peek() is None or not tk.peek().isdigit():
                raise tk.error("expected a denominator")
            denominator = tk.take_number()
            if denominator == 0:
                raise tk.error("zero denominator")
            return gr(Fraction(numerator, denominator))
        return gr(numerator)
    if ch.isalpha() or ch == "_":
        ident = tk.take_ident()
        if ident == "i":
            return gr(0, 1)
        raise MalformedScalar(
            f"unexpected identifier {ident!r} in scalar", tk.line, tk.col()
        )
    raise tk.error(f"unexpected character {ch!r}")


def _starts_factor(ch: str | None) -> bool:
    return ch is not None and (ch == "(" or ch.isdigit())


def _parse_product(tk: _Tokens) -> GaussianRational:
    value = _parse_factor(tk)
    while True:
        ch = tk.peek()
        if ch == "*":
            tk.take_char()
            value = value * _parse_factor(tk)
            continue
        # Implicit product: "3 i", "2 (1+i)", "3/4 i".
        if ch == "i":
            save = tk.pos
            ident = tk.take_ident()
            if ident == "i":
                value = value * gr(0, 1)
                continue
            tk.pos = save
            return value
        if ch == "(":
            value = value * _parse_factor(tk)
            continue
        return value


def _parse_sum(tk: _Tokens) -> GaussianRational:
    value = _parse_product(tk)
    while True:
        ch = tk.peek()
        if ch == "+":
            tk.take_char()
            value = value + _parse_product(tk)
        elif ch == "-":
            tk.take_char()
            value = value - _parse_product(tk)
        else:
            return value


def parse_scalar(text: str, line: int = 0, col0: int = 1) -> GaussianRational:
    """Parse a standalone scalar expression to a GaussianRational."""
    tk = _Tokens(text, line, col0)
    value = _parse_sum(tk)
    if not tk.at_end():
        raise tk.error("trailing input after scalar expression")
    return value


def _parse_combination(
    text: str, labels: Sequence[str], line: int, col0: int
) -> dict[str, GaussianRational]:
    """Parse a linear combination of labels; a bare scalar 0 is allowed."""
    tk = _Tokens(text, line, col0)
    label_set = set(labels)
    combo: dict[str, GaussianRational] = {}
    first = True
    saw_scalar_only = False
    while True:
        sign = ONE
        ch = tk.peek()
        if ch == "+" or ch == "-":
            tk.take_char()
            if ch == "-":
                sign = -ONE
        elif not first:
            raise tk.error("expected '+' or '-' between terms")
        coefficient = ONE
        has_coefficient = False
        ch = tk.peek()
        if ch == "-":
            raise tk.error("doubled sign in combination")
        if _starts_factor(ch):
            coefficient = _parse_product(tk)
            has_coefficient = True
        ch = tk.peek()
        if ch is not None and (ch.isalpha() or ch == "_"):
            col = tk.col()
            ident = tk.take_ident()
            if ident == "i":
                # `i` binds as a coefficient factor, e.g. "i X".
                coefficient = coefficient * gr(0, 1)
                ch = tk.peek()
                if ch is None or not (ch.isalpha() or ch == "_"):
                    raise tk.error("expected a basis label after coefficient")
                col = tk.col()
                ident = tk.take_ident()
            if ident not in label_set:
                raise UndeclaredLabel(
                    f"undeclared basis label {ident!r}", line, col
                )
            value = combo.get(ident, ZERO) + sign * coefficient
            combo[ident] = value
        else:
            if not has_coefficient:
                raise tk.error("expected a term")
            if sign * coefficient != ZERO:
                raise tk.error("scalar term in a combination must be zero")
            saw_scalar_only = True
        first = False
        ch = tk.peek()
        if ch is None:
            break
        if ch not in "+-":
            raise tk.error(f"unexpected character {ch!r} in combination")
    if saw_scalar_only and combo:
        raise tk.error("cannot mix labels with scalar terms")
    return {label: value for label, value in combo.items() if value}


# -- file scanning -----------------------------------------------------------


def _strip_comment(line: str) -> str:
    in_quote = False
    for pos, ch in enumerate(line):
        if ch == '"':
            in_quote = not in_quote
        elif ch == "#" and not in_quote:
            return line[:pos]
    return line


def _scan_sections(text: str):
    sections: list[tuple[str, int, list[tuple[str, int, str, int, int]]]] = []
    current: list[tuple[str, int, str, int, int]] | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("["):
            match = _SECTION_RE.match(stripped)
            if match is None:
                raise DslError("malformed section header", line_no, 1)
            name = match.group(1)
            if name not in SECTION_ORDER:
                raise DslError(f"unknown section [{name}]", line_no, 1)
            if any(existing == name for existing, _, _ in sections):
                raise DuplicateKey(f"section [{name}] repeated", line_no, 1)
            current = []
            sections.append((name, line_no, current))
            continue
        if current is None:
            raise DslError("content before the first section header", line_no, 1)
        eq = _find_equals(line)
        if eq is None:
            raise DslError("expected 'key = value'", line_no, 1)
        key = line[:eq].strip()
        key_col = len(line[:eq]) - len(line[:eq].lstrip()) + 1
        value = line[eq + 1 :].strip()
        value_col = eq + 2 + (len(line[eq + 1 :]) - len(line[eq + 1 :].lstrip()))
        if not key:
            raise DslError("empty key", line_no, 1)
        current.append((key, key_col, value, value_col, line_no))
    return sections


def _find_equals(line: str) -> int | None:
    in_quote = False
    for pos, ch in enumerate(line):
        if ch == '"':
            in_quote = not in_quote
        elif ch == "=" and not in_quote:
            return pos
    return None


def _pair_key(
    key: str, labels: Sequence[str], line: int, col: int
) -> tuple[str, str]:
    match = _PAIR_KEY_RE.match(key)
    if match is None:
        raise DslError(f'expected a quoted pair key like "A,B", got {key!r}', line, col)
    a, b = match.group(1), match.group(2)
    for label in (a, b):
        if label not in labels:
            raise UndeclaredLabel(f"undeclared basis label {label!r}", line, col)
    return a, b


def parse(text: str) -> SpecFile:
    """Parse `.liealg` text; every failure carries a line/column location."""
    sections = _scan_sections(text)
    by_name = {name: (line_no, lines) for name, line_no, lines in sections}
    if "algebra" not in by_name:
        raise MissingSection("missing required section [algebra]", 0, 0)

    _, algebra_lines = by_name["algebra"]
    name: str | None = None
    dim: int | None = None
    labels: tuple[str, ...] | None = None
    seen: set[str] = set()
    for key, key_col, value, value_col, line_no in algebra_lines:
        if key in seen:
            raise DuplicateKey(f"key {key!r} repeated", line_no, key_col)
        seen.add(key)
        if key == "name":
            if not _IDENT_RE.fullmatch(value):
                raise DslError("name must be an identifier", line_no, value_col)
            name = value
        elif key == "dim":
            if not value.isdigit():
                raise DslError("dim must be a nonnegative integer", line_no, value_col)
            dim = int(value)
        elif key == "basis":
            parts = [p.strip() for p in value.split(",")]
            if any(not _IDENT_RE.fullmatch(p) or p == "i" for p in parts):
                raise DslError(
                    "basis must be comma-separated labels (and 'i' is reserved)",
                    line_no,
                    value_col,
                )
            if len(set(parts)) != len(parts):
                raise DslError("duplicate basis label", line_no, value_col)
            labels = tuple(parts)
        else:
            raise DslError(f"unknown [algebra] key {key!r}", line_no, key_col)
    if name is None or dim is None or labels is None:
        raise MissingSection(
            "[algebra] must declare name, dim and basis", by_name["algebra"][0], 1
        )
    if dim != len(labels):
        raise DslError(
            f"dim = {dim} but {len(labels)} basis labels declared",
            by_name["algebra"][0],
            1,
        )

    spec = SpecFile(name=name, labels=labels)
    index = {label: k for k, label in enumerate(labels)}

    if "brackets" in by_name:
        for key, key_col, value, value_col, line_no in by_name["brackets"][1]:
            a, b = _pair_key(key, labels, line_no, key_col)
            combo = _parse_combination(value, labels, line_no, value_col)
            if a == b:
                if combo:
                    raise DslError(
                        f'bracket "{a},{a}" must be zero', line_no, value_col
                    )
                continue
            if index[a] > index[b]:
                a, b = b, a
                combo = {label: -v for label, v in combo.items()}
            if (a, b) in spec.brackets:
                raise DuplicateKey(
                    f'bracket "{a},{b}" specified twice', line_no, key_col
                )
            if combo:
                spec.brackets[(a, b)] = combo

    if "form" in by_name:
        for key, key_col, value, value_col, line_no in by_name["form"][1]:
            a, b = _pair_key(key, labels, line_no, key_col)
            if index[a] > index[b]:
                a, b = b, a
            if (a, b) in spec.form:
                raise DuplicateKey(f'form entry "{a},{b}" given twice', line_no, key_col)
            scalar = parse_scalar(value, line_no, value_col)
            if scalar:
                spec.form[(a, b)] = scalar

    if "isotropy" in by_name:
        generators: list[dict[str, GaussianRational]] = []
        seen_keys: set[str] = set()
        for key, key_col, value, value_col, line_no in by_name["isotropy"][1]:
            if not re.fullmatch(r"gen\d*", key):
                raise DslError(
                    f"isotropy keys are gen, gen1, gen2, ...; got {key!r}",
                    line_no,
                    key_col,
                )
            if key in seen_keys:
                raise DuplicateKey(f"key {key!r} repeated", line_no, key_col)
            seen_keys.add(key)
            combo = _parse_combination(value, labels, line_no, value_col)
            if not combo:
                raise DslError("isotropy generator must be nonzero", line_no, value_col)
            generators.append(combo)
        spec.isotropy = tuple(generators)

    if "expected" in by_name:
        for key, key_col, value, value_col, line_no in by_name["expected"][1]:
            if key in spec.expected:
                raise DuplicateKey(f"key {key!r} repeated", line_no, key_col)
            spec.expected[key] = _normalize_expected(key, value, line_no, value_col)

    return spec


def _normalize_expected(key: str, value: str, line: int, col: int) -> str:
    value = value.strip()
    if key in _BOOL_KEYS:
        lowered = value.lower()
        if lowered not in ("true", "false"):
            raise DslError(f"{key} must be true or false", line, col)
        return lowered
    if key in _INT_KEYS:
        if not value.isdigit():
            raise DslError(f"{key} must be a nonnegative integer", line, col)
        return str(int(value))
    if key in _TAG_KEYS:
        return value.upper()
    if key == "derived_dims":
        parts = [p.strip() for p in value.split(",")]
        if any(not p.isdigit() for p in parts):
            raise DslError("derived_dims must be a comma list of integers", line, col)
        return ",".join(str(int(p)) for p in parts)
    if key == "constant_curvature":
        if value.lower() == "none":
            return "none"
        return str(parse_scalar(value, line, col))
    return value


# -- serialization -----------------------------------------------------------


def format_scalar(value: GaussianRational) -> str:
    return str(value)


def format_combination(
    labels: Sequence[str], combo: dict[str, GaussianRational]
) -> str:
    """Canonical rendering of a linear combination, basis order first."""
    ordered = [
        (label, combo[label]) for label in labels if label in combo and combo[label]
    ]
    if not ordered:
        return "0"
    parts: list[str] = []
    for position, (label, coeff) in enumerate(ordered):
        sign, magnitude = _split_sign(coeff)
        if magnitude == ONE:
            body = label
        elif magnitude == gr(0, 1):
            body = f"i {label}"
        else:
            text = format_scalar(magnitude)
            body = f"({text}) {label}" if _needs_parens(magnitude) else f"{text} {label}"
        if position == 0:
            parts.append(body if sign > 0 else f"- {body}")
        else:
            parts.append(f"+ {body}" if sign > 0 else f"- {body}")
    return " ".join(parts)


def _split_sign(value: GaussianRational) -> tuple[int, GaussianRational]:
    if value.im == 0:
        return (1, value) if value.re > 0 else (-1, -value)
    if value.re == 0:
        return (1, value) if value.im > 0 else (-1, -value)
    return 1, value


def _needs_parens(value: GaussianRational) -> bool:
    return bool(value.re) and bool(value.im)


def serialize(spec: SpecFile) -> str:
    """Canonical text: fixed section order, lexicographic keys, lowest terms."""
    lines = ["[algebra]"]
    lines.append(f"name = {spec.name}")
    lines.append(f"dim = {len(spec.labels)}")
    lines.append(f"basis = {', '.join(spec.labels)}")

    if spec.brackets:
        lines.append("")
        lines.append("[brackets]")
        for a, b in sorted(spec.brackets):
            rendered = format_combination(spec.labels, spec.brackets[(a, b)])
            lines.append(f'"{a},{b}" = {rendered}')

    if spec.form:
        lines.append("")
        lines.append("[form]")
        for a, b in sorted(spec.form):
            lines.append(f'"{a},{b}" = {format_scalar(spec.form[(a, b)])}')

    if spec.isotropy:
        lines.append("")
        lines.append("[isotropy]")
        if len(spec.isotropy) == 1:
            lines.append(f"gen = {format_combination(spec.labels, spec.isotropy[0])}")
        else:
            for k, combo in enumerate(spec.isotropy, start=1):
                lines.append(f"gen{k} = {format_combination(spec.labels, combo)}")

    if spec.expected:
        lines.append("")
        lines.append("[expected]")
        for key in sorted(spec.expected):
            lines.append(f"{key} = {spec.expected[key]}")

    return "\n".join(lines) + "\n"


# -- conversion to domain objects ---------------------------------------------


def to_algebra(spec: SpecFile) -> LieAlgebra:
    table = {pair: dict(combo) for pair, combo in spec.brackets.items()}
    return LieAlgebra.from_table(spec.labels, table)


def greedy_complement(
    algebra: LieAlgebra, isotropy: Sequence[Vector]
) -> list[tuple[str, Vector]]:
    """Deterministic complement: basis vectors completing the isotropy,
    taken in declared order."""
    current = [v for v in isotropy]
    chosen: list[tuple[str, Vector]] = []
    for position, label in enumerate(algebra.basis_names):
        if len(chosen) == algebra.dim - len(isotropy):
            break
        candidate = algebra.basis_vector(position)
        if not in_span(current, candidate):
            current.append(candidate)
            chosen.append((label, candidate))
    return chosen


def to_metric(spec: SpecFile) -> QuadraticForm | None:
    """Form on the full basis; only for files without an isotropy section."""
    if spec.isotropy:
        raise ValueError("file declares an isotropy; use to_model instead")
    if not spec.form:
        return None
    return QuadraticForm.from_sparse(spec.labels, spec.form)


def to_model(spec: SpecFile) -> HomogeneousModel:
    """Model with the greedy complement; form keys must use complement labels."""
    if not spec.isotropy:
        raise ValueError("file declares no isotropy section")
    algebra = to_algebra(spec)
    generators = [algebra.vector(combo) for combo in spec.isotropy]
    chosen = greedy_complement(algebra, generators)
    complement_labels = [label for label, _ in chosen]
    quotient_form = None
    if spec.form:
        for a, b in spec.form:
            if a not in complement_labels or b not in complement_labels:
                raise ValueError(
                    f"form entry ({a},{b}) uses a label outside the complement "
                    f"{complement_labels}"
                )
        quotient_form = QuadraticForm.from_sparse(complement_labels, spec.form)
    return HomogeneousModel(
        algebra,
        isotropy=generators,
        complement=[v for _, v in chosen],
        quotient_form=quotient_form,
    )


def specfile_from_parts(
    name: str,
    algebra: LieAlgebra,
    form: QuadraticForm | None = None,
    model: HomogeneousModel | None = None,
    expected: dict[str, str] | None = None,
) -> SpecFile:
    """Canonical SpecFile mirroring in-memory catalog data."""
    labels = algebra.basis_names
    spec = SpecFile(name=name, labels=labels)
    n = algebra.dim
    for i in range(n):
        for j in range(i + 1, n):
            combo = {
                labels[k]: c
                for k, c in enumerate(algebra.constants[i][j])
                if c
            }
            if combo:
                spec.brackets[(labels[i], labels[j])] = combo
    if form is not None and model is not None:
        raise ValueError("give either a metric or a model, not both")
    if form is not None:
        _fill_form(spec, labels, form)
    if model is not None:
        complement_labels = []
        for v in model.complement:
            hits = [k for k, c in enumerate(v) if c]
            if len(hits) != 1 or v[hits[0]] != ONE:
                raise ValueError("complement vectors must be plain basis vectors")
            complement_labels.append(labels[hits[0]])
        if model.quotient_form is not None:
            _fill_form(spec, complement_labels, model.quotient_form)
        spec.isotropy = tuple(
            {labels[k]: c for k, c in enumerate(v) if c} for v in model.isotropy
        )
    if expected:
        spec.expected = dict(expected)
    return spec


def _fill_form(spec: SpecFile, labels: Sequence[str], form: QuadraticForm) -> None:
    index = {label: k for k, label in enumerate(spec.labels)}
    for i in range(form.dim):
        for j in range(i, form.dim):
            value = form.gram.entries[i][j]
            if value:
                a, b = labels[i], labels[j]
                if index[a] > index[b]:
                    a, b = b, a
                spec.form[(a, b)] = value
