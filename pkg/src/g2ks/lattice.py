"""K-type lattice diagrams annotated with vanishing orders.

The plane is the (n, m) grid of K-types; each point carries the vanishing
orders of its slots in the chosen series at a chosen parameter point.  When
the parameter sits at one of the named special points, the matching
subrepresentation families are highlighted (the minimal-representation line,
the two-line family, the kernel families at integer points).

Rendering is either a plain-text grid or a matplotlib figure written to an
SVG file with a companion CSV of the underlying table.  Figure output is
deterministic: fixed hash salt, no date metadata.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .gstruct import KType, ktypes_up_to, parity_slots
from .intertwiner import eigenvalue_mu, special_subrep

STYLES = ("ascii", "svg")


@dataclass(frozen=True)
class LatticePoint:
    ktype: KType
    orders: tuple[tuple[int, int], ...]  # (slot, vanishing order at s0)
    highlighted: bool


@dataclass(frozen=True)
class LatticeDiagram:
    eps: int
    s0: Fraction
    bound: int
    points: tuple[LatticePoint, ...]
    highlight_label: str | None


def _active_subreps(eps: int, s0: Fraction):
    """Named subrepresentation data matching (eps, s0), if any."""
    candidates = [special_subrep("ladder"), special_subrep("double_ladder"), special_subrep("lds")]
    if s0.denominator == 1 and s0 >= 3:
        k = 2 * int(s0)
        candidates.append(special_subrep("qds", k))
    for info in candidates:
        if info.eps == eps and info.s0 == s0:
            return info
    return None


def build_lattice(eps: int, s0, bound: int) -> LatticeDiagram:
    if eps not in (0, 1):
        raise PreconditionError(f"eps must be 0 or 1, got {eps}")
    if bound < 0:
        raise PreconditionError(f"bound must be >= 0, got {bound}")
    s0 = Fraction(s0)
    info = _active_subreps(eps, s0)
    points = []
    for kt in ktypes_up_to(bound):
        slots = parity_slots(kt, eps)
        if not slots:
            continue
        orders = tuple((j, eigenvalue_mu(kt.n, kt.m, j).valuation(s0)) for j in slots)
        highlighted = bool(info and info.member(kt))
        points.append(LatticePoint(kt, orders, highlighted))
    label = info.name if info else None
    return LatticeDiagram(eps, s0, bound, tuple(points), label)


def render_ascii(diagram: LatticeDiagram) -> str:
    """Text grid: rows are m descending, columns n ascending; cells list the
    slot orders, with a * marking highlighted K-types."""
    by_pos = {(p.ktype.n, p.ktype.m): p for p in diagram.points}
    max_n = max((p.ktype.n for p in diagram.points), default=0)
    max_m = max((p.ktype.m for p in diagram.points), default=0)
    cells = {}
    width = 3
    for pos, p in by_pos.items():
        text = ",".join(str(v) for _j, v in p.orders)
        if p.highlighted:
            text += "*"
        cells[pos] = text
        width = max(width, len(text))
    lines = [
        f"vanishing orders at s = {diagram.s0}, series eps = {diagram.eps}"
        + (f"  (* = {diagram.highlight_label})" if diagram.highlight_label else "")
    ]
    for m in range(max_m, -1, -1):
        row = [f"m={m:<3}"]
        for n in range(max_n + 1):
            row.append(cells.get((n, m), "").ljust(width))
        lines.append(" ".join(row).rstrip())
    footer = ["      "] + [f"n={n}".ljust(width) for n in range(0, max_n + 1)]
    lines.append(" ".join(footer).rstrip())
    return "\n".join(lines) + "\n"


def lattice_rows(diagram: LatticeDiagram) -> list[tuple]:
    """Flat (n, m, slot, order, highlighted) rows, deterministic order."""
    rows = []
    for p in diagram.points:
        for j, order in p.orders:
            rows.append((p.ktype.n, p.ktype.m, j, order, int(p.highlighted)))
    return rows


def write_lattice_csv(diagram: LatticeDiagram, path: str) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["n", "m", "slot", "order", "highlighted"])
        writer.writerows(lattice_rows(diagram))


def render_svg(diagram: LatticeDiagram, path: str) -> None:
    """Write the diagram as an SVG figure (deterministic output)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "g2ks"

    fig, ax = plt.subplots(figsize=(max(6.0, diagram.bound * 0.45), max(4.0, diagram.bound * 0.3)))
    plain_n, plain_m, hi_n, hi_m = [], [], [], []
    for p in diagram.points:
        (hi_n if p.highlighted else plain_n).append(p.ktype.n)
        (hi_m if p.highlighted else plain_m).append(p.ktype.m)
    ax.scatter(plain_n, plain_m, s=28, color="#4878a8", zorder=2, label="K-types")
    if hi_n:
        ax.scatter(
            hi_n,
            hi_m,
            s=60,
            color="#c0392b",
            marker="s",
            zorder=3,
            label=diagram.highlight_label,
        )
    for p in diagram.points:
        text = ",".join(str(v) for _j, v in p.orders)
        ax.annotate(
            text,
            (p.ktype.n, p.ktype.m),
            textcoords="offset points",
            xytext=(0, 6),
            ha="center",
            fontsize=7,
        )
    ax.set_xlabel("n")
    ax.set_ylabel("m")
    ax.set_title(f"slot vanishing orders at s = {diagram.s0}, eps = {diagram.eps}")
    ax.grid(True, linewidth=0.3, alpha=0.5, zorder=1)
    if hi_n or plain_n:
        ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
