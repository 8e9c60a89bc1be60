"""Certified coefficient signs and Descartes sign-change counting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from vsmooth.exact.algebraic import AlgebraicValue, _as_value


@dataclass(frozen=True)
class SignSequence:
    """Signs in {+1, -1, 0, None}; None marks an unresolved entry."""

    signs: tuple[int | None, ...]
    bits: tuple[int, ...]

    @property
    def indeterminate(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.signs) if s is None)

    @property
    def resolved(self) -> bool:
        return not self.indeterminate

    @property
    def sign_changes(self) -> int:
        if not self.resolved:
            raise ValueError(f"unresolved signs at indices {self.indeterminate}")
        nz = [s for s in self.signs if s != 0]
        return sum(1 for x, y in zip(nz, nz[1:]) if x != y)

    @property
    def max_bits(self) -> int:
        return max(self.bits, default=0)

    def runs(self) -> list[tuple[int | None, int]]:
        """Run-length encoding of the sign sequence: [(sign, count), ...]."""
        out: list[tuple[int | None, int]] = []
        for s in self.signs:
            if out and out[-1][0] == s:
                out[-1] = (s, out[-1][1] + 1)
            else:
                out.append((s, 1))
        return out

    def __str__(self) -> str:
        sym = {1: "+", -1: "-", 0: "0", None: "?"}
        return "".join(sym[s] for s in self.signs)


def certified_signs(
    values: Iterable[AlgebraicValue | int],
    start_bits: int = 128,
    max_bits: int = 16384,
) -> SignSequence:
    """Resolve each sign by doubling precision until the enclosure excludes 0."""
    if start_bits < 64:
        raise ValueError("start_bits must be at least 64")
    if max_bits < start_bits:
        raise ValueError("max_bits must be >= start_bits")
    signs, bits = [], []
    for v in values:
        s, b = _as_value(v).sign(start_bits, max_bits)
        signs.append(s)
        bits.append(b)
    return SignSequence(tuple(signs), tuple(bits))
