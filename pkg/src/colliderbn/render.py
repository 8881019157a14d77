"""ASCII probability monitors: one horizontal bar per state with a
one-decimal percentage."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

BAR_WIDTH = 20
BAR_CHAR = "#"


def percent(p: float) -> str:
    """One-decimal percentage, rounded half up (0.18182 -> '18.2%')."""
    q = (Decimal(repr(p)) * 100).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP)
    return f"{q}%"


def bar(p: float, width: int = BAR_WIDTH) -> str:
    """Bar of length proportional to p at full scale ``width``, rounded half up."""
    n = int((Decimal(repr(p)) * width).quantize(Decimal("1"), rounding=ROUND_HALF_UP))
    return BAR_CHAR * n


@dataclass(frozen=True)
class RenderedMonitor:
    """Per-variable monitor: one (state, probability, bar) line per state."""

    variable: str
    lines: tuple[tuple[str, float, str], ...]

    def text(self, label: str | None = None) -> str:
        head = label if label is not None else self.variable
        width = max(len(s) for s, _, _ in self.lines)
        out = [head]
        for state, p, b in self.lines:
            out.append(f"  {state:<{width}}  {percent(p):>6}  |{b}")
        return "\n".join(out)


def monitor(variable: str, distribution: dict[str, float]) -> RenderedMonitor:
    return RenderedMonitor(
        variable=variable,
        lines=tuple((state, p, bar(p)) for state, p in distribution.items()),
    )
