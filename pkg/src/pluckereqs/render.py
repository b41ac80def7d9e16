"""Text, LaTeX, JSON and CSV serialization of equations and systems.

Multi-indices are rendered as concatenated digits for n <= 9 (so ``(1,2,3)``
prints as ``123``) and dot-separated for n >= 10 (``1.2.10``), since plain
concatenation is ambiguous there.  JSON always stores explicit integer
arrays and round-trips losslessly.
"""

from __future__ import annotations

import csv
import io
import json

from .equations import (
    CANONICAL,
    RAW,
    EquationSystem,
    QuadraticEquation,
    QuadTerm,
    canonicalize,
)
from .multiindex import GrassmannParams, MultiIndex, as_multiindex

FORMATS = ("text", "latex", "json", "csv")
INDEX_STYLES = ("auto", "concat", "dots")

__all__ = [
    "FORMATS",
    "INDEX_STYLES",
    "format_multiindex",
    "format_label",
    "equation_text",
    "equation_latex",
    "render",
    "system_to_dict",
    "system_from_dict",
    "system_from_json",
]


def resolve_style(n: int, style: str = "auto") -> str:
    if style not in INDEX_STYLES:
        raise ValueError(f"index style must be one of {INDEX_STYLES}, got {style!r}")
    if style == "auto":
        return "dots" if n >= 10 else "concat"
    return style


def format_multiindex(idx: MultiIndex, style: str = "concat") -> str:
    sep = "." if style == "dots" else ""
    return sep.join(str(i) for i in idx)


def format_label(eq: QuadraticEquation, style: str = "concat") -> str:
    j, k = eq.label
    return f"({format_multiindex(j, style)},{format_multiindex(k, style)})"


def _term_body(term: QuadTerm, style: str, latex: bool) -> str:
    magnitude = abs(term.coefficient)
    left = format_multiindex(term.left, style)
    right = format_multiindex(term.right, style)
    if latex:
        body = f"{{\\lambda}}_{{{left}}} {{\\lambda}}_{{{right}}}"
        return f"{magnitude} {body}" if magnitude != 1 else body
    body = f"λ_{{{left}}}λ_{{{right}}}"
    return f"{magnitude}{body}" if magnitude != 1 else body


def _equation_body(eq: QuadraticEquation, style: str, latex: bool) -> str:
    if not eq.terms:
        return "0 = 0"
    pieces = []
    for pos, term in enumerate(eq.terms):
        body = _term_body(term, style, latex)
        if pos == 0:
            pieces.append(f"-{body}" if term.coefficient < 0 else body)
        else:
            pieces.append(("- " if term.coefficient < 0 else "+ ") + body)
    return " ".join(pieces) + " = 0"


def equation_text(eq: QuadraticEquation, index_style: str = "auto", with_label: bool = True) -> str:
    """One-line text form, e.g. ``(1,12345): λ_{123}λ_{145} - ... = 0``."""
    style = resolve_style(eq.params.n, index_style)
    body = _equation_body(eq, style, latex=False)
    if not with_label:
        return body
    return f"{format_label(eq, style)}: {body}"


def equation_latex(eq: QuadraticEquation, index_style: str = "auto") -> str:
    """Math-mode LaTeX for one equation, without the label."""
    style = resolve_style(eq.params.n, index_style)
    return f"${_equation_body(eq, style, latex=True)}$"


def _system_caption(system: EquationSystem) -> str:
    name = {1: "Plucker equations", 2: "Plucker-like equations"}.get(
        system.m, f"generalized equations (m={system.m})"
    )
    return f"{name} for (n,p) = ({system.params.n},{system.params.p})"


def _render_text(system: EquationSystem, style: str, with_labels: bool) -> str:
    lines = [equation_text(eq, style, with_label=with_labels) for eq in system]
    return "\n".join(lines) + "\n"


def _render_latex(system: EquationSystem, style: str, with_labels: bool) -> str:
    lines = []
    if with_labels:
        lines.append("\\begin{longtable}{rll}")
        lines.append(f"\\caption{{{_system_caption(system)}}} \\\\")
        lines.append("\\# & $(j,k)$ & Equation \\\\")
    else:
        lines.append("\\begin{longtable}{rl}")
        lines.append(f"\\caption{{{_system_caption(system)}, reduced}} \\\\")
        lines.append("\\# & Equation \\\\")
    lines.append("\\hline")
    for ordinal, eq in enumerate(system, 1):
        resolved = resolve_style(eq.params.n, style)
        body = equation_latex(eq, style)
        if with_labels:
            lines.append(f"{ordinal} & {format_label(eq, resolved)} & {body} \\\\")
        else:
            lines.append(f"{ordinal} & {body} \\\\")
    lines.append("\\end{longtable}")
    return "\n".join(lines) + "\n"


def system_to_dict(system: EquationSystem) -> dict:
    return {
        "n": system.params.n,
        "p": system.params.p,
        "m": system.m,
        "equations": [
            {
                "j": list(eq.label[0]),
                "k": list(eq.label[1]),
                "terms": [
                    {"c": t.coefficient, "left": list(t.left), "right": list(t.right)}
                    for t in eq.terms
                ],
            }
            for eq in system
        ],
    }


def system_from_dict(data: dict) -> EquationSystem:
    """Rebuild a system from its JSON dictionary form.

    The raw/canonical flag is not stored on the wire; it is re-derived by
    comparing each equation with its own canonical form.
    """
    try:
        params = GrassmannParams(int(data["n"]), int(data["p"]))
        m = int(data["m"])
        raw_equations = data["equations"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed equation-system JSON: {exc}") from exc
    equations = []
    for entry in raw_equations:
        label = (as_multiindex(entry["j"]), as_multiindex(entry["k"]))
        terms = tuple(
            QuadTerm(int(t["c"]), as_multiindex(t["left"]), as_multiindex(t["right"]))
            for t in entry["terms"]
        )
        for term in terms:
            if term.coefficient == 0:
                raise ValueError("zero coefficient in equation terms")
            if term.right < term.left:
                raise ValueError("terms must be stored with left <= right")
        eq = QuadraticEquation(params, label, terms, RAW)
        if terms == canonicalize(eq).terms:
            eq = QuadraticEquation(params, label, terms, CANONICAL)
        equations.append(eq)
    return EquationSystem(params, m, tuple(equations))


def system_from_json(text: str) -> EquationSystem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON: {exc}") from exc
    return system_from_dict(data)


def _render_json(system: EquationSystem) -> str:
    return json.dumps(system_to_dict(system), indent=2) + "\n"


def _render_csv(system: EquationSystem, style: str) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["ordinal", "j", "k", "coefficient", "left", "right"])
    for ordinal, eq in enumerate(system, 1):
        resolved = resolve_style(eq.params.n, style)
        j, k = eq.label
        for term in eq.terms:
            writer.writerow(
                [
                    ordinal,
                    format_multiindex(j, resolved),
                    format_multiindex(k, resolved),
                    term.coefficient,
                    format_multiindex(term.left, resolved),
                    format_multiindex(term.right, resolved),
                ]
            )
    return buffer.getvalue()


def render(
    obj: EquationSystem | QuadraticEquation,
    fmt: str = "text",
    index_style: str = "auto",
    with_labels: bool = True,
) -> str:
    """Render a system or a single equation to one of the supported formats."""
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    if isinstance(obj, QuadraticEquation):
        if fmt == "text":
            return equation_text(obj, index_style, with_label=with_labels) + "\n"
        if fmt == "latex":
            return equation_latex(obj, index_style) + "\n"
        raise ValueError(f"{fmt} rendering requires a full EquationSystem")
    if fmt == "text":
        return _render_text(obj, index_style, with_labels)
    if fmt == "latex":
        return _render_latex(obj, index_style, with_labels)
    if fmt == "json":
        return _render_json(obj)
    return _render_csv(obj, index_style)
