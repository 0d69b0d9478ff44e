"""Ring and ideal declarations for external Groebner basis checks."""

from __future__ import annotations

from typing import Sequence

from .orbits_gl import Chart, EquationSet
from .polyalg import T, Polynomial

DIALECTS = ("singular", "macaulay2")


def _singular_name(v) -> str:
    return "t" if v == T else f"x_{v[0]}_{v[1]}"


def _m2_name(v) -> str:
    return "t" if v == T else f"x_({v[0]},{v[1]})"


def export_polys(polys: Sequence[Polynomial], n: int, dialect: str, title: str = "", with_t: bool | None = None) -> str:
    """Self-contained script declaring ``QQ[x_i_j (, t)]`` and the ideal of ``polys``."""
    if dialect not in DIALECTS:
        raise ValueError(f"unsupported dialect {dialect!r}; choose from {', '.join(DIALECTS)}")
    if with_t is None:
        with_t = any(g.uses_t() for g in polys)
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    if dialect == "singular":
        names = [_singular_name(v) for v in cells] + (["t"] if with_t else [])
        lines = [f"// {title}"] if title else []
        lines.append(f"// {len(names)} variables, {len(polys)} generators")
        lines.append(f"ring R = 0, ({', '.join(names)}), Dp;")
        if polys:
            body = ",\n  ".join(g.to_string(_singular_name) for g in polys)
            lines.append(f"ideal I =\n  {body};")
        else:
            lines.append("ideal I = 0;")
        lines += [
            "// ideal G = std(I);",
            "// compare with another ideal J on the same ring:",
            "// size(reduce(J, std(I))) == 0 && size(reduce(I, std(J))) == 0",
        ]
    else:
        names = [_m2_name(v) for v in cells] + (["t"] if with_t else [])
        lines = [f"-- {title}"] if title else []
        lines.append(f"-- {len(names)} variables, {len(polys)} generators")
        lines.append(f"R = QQ[{', '.join(names)}, MonomialOrder => GLex];")
        if polys:
            body = ",\n  ".join(g.to_string(_m2_name) for g in polys)
            lines.append(f"I = ideal(\n  {body});")
        else:
            lines.append("I = ideal(0_R);")
        lines += [
            "-- G = gb I;",
            "-- compare with another ideal J in R:",
            "-- I == J",
        ]
    return "\n".join(lines) + "\n"


def export_cas(obj: EquationSet | Chart, dialect: str, title: str = "") -> str:
    if isinstance(obj, Chart):
        return export_polys(obj.equations(), obj.base.n, dialect, title, with_t=True)
    return export_polys(obj.polynomials(), obj.n, dialect, title)
