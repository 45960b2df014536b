"""Latin squares and the cyclic MOLS family of prime order.

Cell values are stored 0-based and reported 1-based; rows and columns are
addressed 1-based in the public accessors to match the usual ``L(j, k)``
notation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ContractViolation, DomainError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def require_prime_order(n: int) -> None:
    if n < 3:
        raise DomainError(f"n must be at least 3 (got {n})")
    if not is_prime(n):
        raise DomainError(f"n must be prime (got {n})")


@dataclass(frozen=True)
class LatinSquare:
    order: int
    cells: tuple[tuple[int, ...], ...]  # 0-based values

    def __call__(self, j: int, k: int) -> int:
        """1-based value at row ``j``, column ``k`` (both 1-based)."""
        return self.cells[j - 1][k - 1] + 1

    def rows(self) -> list[list[int]]:
        return [[c + 1 for c in row] for row in self.cells]

    def to_json(self) -> dict:
        return {"order": self.order, "rows": self.rows()}

    @classmethod
    def from_json(cls, data: dict) -> "LatinSquare":
        rows = data["rows"]
        if not is_latin(rows):
            raise ContractViolation("rows do not form a Latin square")
        return cls(int(data["order"]), tuple(tuple(c - 1 for c in r) for r in rows))

    def grid(self) -> str:
        width = len(str(self.order))
        sep = "+" + "+".join("-" * (width + 2) for _ in range(self.order)) + "+"
        lines = [sep]
        for row in self.rows():
            lines.append("|" + "|".join(f" {c:>{width}} " for c in row) + "|")
            lines.append(sep)
        return "\n".join(lines)


def cyclic_square(n: int, i: int) -> LatinSquare:
    """Square with L(j, k) = 1 + ((j - 1) + i (k - 1) mod n)."""
    cells = tuple(tuple(((j - 1) + i * (k - 1)) % n for k in range(1, n + 1))
                  for j in range(1, n + 1))
    return LatinSquare(n, cells)


def mols_family(n: int) -> list[LatinSquare]:
    """The n-1 mutually orthogonal squares L_1 .. L_{n-1} for prime n >= 3."""
    require_prime_order(n)
    return [cyclic_square(n, i) for i in range(1, n)]


def _validate_array(sq: Sequence[Sequence[int]]) -> int:
    n = len(sq)
    if n == 0:
        raise ContractViolation("empty array")
    for r in sq:
        if len(r) != n:
            raise ContractViolation("array is not square")
        for c in r:
            if not (isinstance(c, int) and 1 <= c <= n):
                raise ContractViolation(f"entry {c!r} outside [1..{n}]")
    return n


def is_latin(sq: Sequence[Sequence[int]] | LatinSquare) -> bool:
    """Row and column permutation test on a 1-based n x n array."""
    rows = sq.rows() if isinstance(sq, LatinSquare) else sq
    n = _validate_array(rows)
    target = set(range(1, n + 1))
    return (all(set(r) == target for r in rows)
            and all({rows[j][k] for j in range(n)} == target for k in range(n)))


def are_orthogonal(a: LatinSquare, b: LatinSquare) -> bool:
    if a.order != b.order:
        raise ContractViolation(f"order mismatch: {a.order} vs {b.order}")
    pairs = {(a.cells[j][k], b.cells[j][k]) for j in range(a.order) for k in range(a.order)}
    return len(pairs) == a.order * a.order
