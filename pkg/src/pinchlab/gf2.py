"""Linear algebra over GF(2) on integer bitmasks.

A vector of width n is a Python int whose bit ``n - 1 - i`` holds coordinate
``i``, so the string ``"110"`` is e1 + e2 and reads left to right like the
coordinates. Subspaces are stored only in reduced row-echelon form, which
makes equality and hashing structural.
"""

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations

from .errors import CapacityError, PreconditionError, StructuralError

logger = logging.getLogger(__name__)

MAX_AMBIENT_DIM = 6
MAX_BRUTE_FORCE_DIM = 4


def parity(x: int) -> int:
    return x.bit_count() & 1


def parse_bits(text: str) -> int:
    """Parse a bit string such as ``"101"``."""
    if not text or set(text) - {"0", "1"}:
        raise StructuralError(f"not a bit string: {text!r}")
    return int(text, 2)


def format_bits(x: int, n: int) -> str:
    return format(x, f"0{n}b")


def pivot_basis(rows: Iterable[int]) -> dict[int, int]:
    """Reduce rows against each other, keyed by leading bit."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                pivots[top] = row
                break
            row ^= pivots[top]
    return pivots


def reduce_against(x: int, pivots: dict[int, int]) -> int:
    """Return the remainder of x after elimination by a pivot basis."""
    while x:
        top = x.bit_length() - 1
        if top not in pivots:
            return x
        x ^= pivots[top]
    return 0


def rank_of(rows: Iterable[int]) -> int:
    return len(pivot_basis(rows))


def _reduced_echelon(rows: Iterable[int]) -> tuple[int, ...]:
    pivots = pivot_basis(rows)
    tops = sorted(pivots)
    reduced = dict(pivots)
    # Clear each pivot column upward, lowest pivot first, so no lower pivot bit reappears.
    for top in tops:
        pivot_row = reduced[top]
        for other in tops:
            if other > top and reduced[other] >> top & 1:
                reduced[other] ^= pivot_row
    return tuple(reduced[top] for top in sorted(tops, reverse=True))


@dataclass(frozen=True)
class GF2Vector:
    """Fixed-width vector over GF(2)."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise StructuralError("vector width must be positive")
        if self.bits < 0 or self.bits >> self.n:
            raise StructuralError(f"bits {self.bits} do not fit width {self.n}")

    @classmethod
    def from_str(cls, text: str) -> "GF2Vector":
        return cls(parse_bits(text), len(text))

    @classmethod
    def unit(cls, i: int, n: int) -> "GF2Vector":
        return cls(1 << (n - 1 - i), n)

    def __add__(self, other: "GF2Vector") -> "GF2Vector":
        if other.n != self.n:
            raise StructuralError(f"width mismatch: {self.n} vs {other.n}")
        return GF2Vector(self.bits ^ other.bits, self.n)

    def __neg__(self) -> "GF2Vector":
        return self

    def dot(self, other: "GF2Vector") -> int:
        if other.n != self.n:
            raise StructuralError(f"width mismatch: {self.n} vs {other.n}")
        return parity(self.bits & other.bits)

    def __str__(self) -> str:
        return format_bits(self.bits, self.n)


@dataclass(frozen=True)
class GF2Matrix:
    """Dense GF(2) matrix stored as one bitmask per row."""

    rows: tuple[int, ...]
    width: int

    def __post_init__(self) -> None:
        if self.width < 0:
            raise StructuralError("negative width")
        for row in self.rows:
            if row < 0 or row >> self.width:
                raise StructuralError(f"row {row} does not fit width {self.width}")

    @classmethod
    def from_strings(cls, rows: Sequence[str], width: int | None = None) -> "GF2Matrix":
        widths = {len(r) for r in rows}
        if width is not None:
            widths.add(width)
        if len(widths) > 1:
            raise StructuralError(f"rows of unequal width: {sorted(widths)}")
        if not widths:
            raise StructuralError("width of an empty matrix must be given")
        return cls(tuple(parse_bits(r) for r in rows), widths.pop())

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "GF2Matrix":
        return cls.from_strings(["".join(str(int(e) & 1) for e in row) for row in entries])

    @classmethod
    def from_vectors(cls, vectors: Sequence[GF2Vector], width: int | None = None) -> "GF2Matrix":
        return cls.from_strings([str(v) for v in vectors], width)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls(tuple(1 << (n - 1 - i) for i in range(n)), n)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> (self.width - 1 - j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.width)] for i in range(self.n_rows)]

    def rank(self) -> int:
        return rank_of(self.rows)

    def transpose(self) -> "GF2Matrix":
        m = self.n_rows
        cols = []
        for j in range(self.width):
            col = 0
            for i in range(m):
                if self.entry(i, j):
                    col |= 1 << (m - 1 - i)
            cols.append(col)
        return GF2Matrix(tuple(cols), m)

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.width != other.n_rows:
            raise StructuralError(
                f"cannot multiply {self.n_rows}x{self.width} by {other.n_rows}x{other.width}"
            )
        out = []
        for i in range(self.n_rows):
            acc = 0
            for j in range(self.width):
                if self.entry(i, j):
                    acc ^= other.rows[j]
            out.append(acc)
        return GF2Matrix(tuple(out), other.width)

    def apply(self, x: int) -> int:
        """Matrix times column vector, the result encoded like any vector of width n_rows."""
        m = self.n_rows
        out = 0
        for i, row in enumerate(self.rows):
            if parity(row & x):
                out |= 1 << (m - 1 - i)
        return out

    def bilinear(self, x: int, y: int) -> int:
        """x^T M y."""
        return parity(x & self.apply(y))

    def inverse(self) -> "GF2Matrix":
        n = self.width
        if self.n_rows != n:
            raise StructuralError("only square matrices are invertible")
        aug = [(row << n) | (1 << (n - 1 - i)) for i, row in enumerate(self.rows)]
        for j in range(n):
            bit = 1 << (2 * n - 1 - j)
            pivot = next((r for r in range(j, n) if aug[r] & bit), None)
            if pivot is None:
                raise PreconditionError("matrix is singular over GF(2)")
            aug[j], aug[pivot] = aug[pivot], aug[j]
            for r in range(n):
                if r != j and aug[r] & bit:
                    aug[r] ^= aug[j]
        mask = (1 << n) - 1
        return GF2Matrix(tuple(row & mask for row in aug), n)


@dataclass(frozen=True)
class GF2Subspace:
    """Subspace of GF(2)^n held by its reduced row-echelon basis."""

    basis: tuple[int, ...]
    ambient_dim: int

    def __post_init__(self) -> None:
        if self.ambient_dim < 1:
            raise StructuralError("ambient dimension must be positive")
        tops = [row.bit_length() - 1 for row in self.basis]
        if any(row <= 0 or row >> self.ambient_dim for row in self.basis):
            raise StructuralError("basis row out of range")
        if tops != sorted(set(tops), reverse=True):
            raise StructuralError("basis is not in echelon form")
        for i, top in enumerate(tops):
            if any(other >> top & 1 for k, other in enumerate(self.basis) if k != i):
                raise StructuralError("basis is not reduced")

    @classmethod
    def span(cls, vectors: Iterable[int], n: int) -> "GF2Subspace":
        vectors = list(vectors)
        if any(v < 0 or v >> n for v in vectors):
            raise StructuralError(f"vector does not fit width {n}")
        return cls(_reduced_echelon(vectors), n)

    @classmethod
    def zero(cls, n: int) -> "GF2Subspace":
        return cls((), n)

    @classmethod
    def full(cls, n: int) -> "GF2Subspace":
        return cls(GF2Matrix.identity(n).rows, n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: int | GF2Vector) -> bool:
        x = v.bits if isinstance(v, GF2Vector) else v
        for row in self.basis:
            if x >> (row.bit_length() - 1) & 1:
                x ^= row
        return x == 0

    def __le__(self, other: "GF2Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise StructuralError("ambient dimension mismatch")
        return self.dim <= other.dim and all(other.contains(row) for row in self.basis)

    def __lt__(self, other: "GF2Subspace") -> bool:
        return self != other and self <= other

    def join(self, other: "GF2Subspace") -> "GF2Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise StructuralError("ambient dimension mismatch")
        return GF2Subspace.span(self.basis + other.basis, self.ambient_dim)

    def elements(self) -> Iterator[int]:
        for mask in range(1 << self.dim):
            acc = 0
            for i, row in enumerate(self.basis):
                if mask >> i & 1:
                    acc ^= row
            yield acc

    def intersection(self, other: "GF2Subspace") -> "GF2Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise StructuralError("ambient dimension mismatch")
        small, big = (self, other) if self.dim <= other.dim else (other, self)
        return GF2Subspace.span((v for v in small.elements() if big.contains(v)), self.ambient_dim)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.dim, self.basis)

    def label(self) -> str:
        if not self.basis:
            return "0"
        return "<" + ",".join(format_bits(row, self.ambient_dim) for row in self.basis) + ">"


def echelonize(rows: GF2Matrix) -> GF2Subspace:
    """Canonical subspace spanned by the rows of a matrix."""
    if rows.width < 1:
        raise StructuralError("row width must be at least 1")
    return GF2Subspace(_reduced_echelon(rows.rows), rows.width)


def galois_number(n: int) -> int:
    """Number of subspaces of GF(2)^n."""
    total = 0
    for k in range(n + 1):
        num = den = 1
        for i in range(k):
            num *= (1 << (n - i)) - 1
            den *= (1 << (i + 1)) - 1
        total += num // den
    return total


def enumerate_subspaces(n: int) -> list[GF2Subspace]:
    """Every subspace of GF(2)^n exactly once, ordered by dimension then basis.

    Each reduced echelon matrix is generated from its pivot pattern by filling
    the free positions to the right of every pivot.
    """
    if n < 1:
        raise PreconditionError("ambient dimension must be positive")
    if n > MAX_AMBIENT_DIM:
        raise CapacityError(
            f"subspace enumeration is capped at n={MAX_AMBIENT_DIM}, got {n}",
            partial={"galois_number": galois_number(n)},
        )

    result = []
    for k in range(n + 1):
        for pivots in combinations(range(n - 1, -1, -1), k):
            pivot_set = set(pivots)
            slots = [(r, b) for r, p in enumerate(pivots) for b in range(p) if b not in pivot_set]
            for mask in range(1 << len(slots)):
                rows = [1 << p for p in pivots]
                for i, (r, b) in enumerate(slots):
                    if mask >> i & 1:
                        rows[r] |= 1 << b
                result.append(GF2Subspace(tuple(rows), n))

    result.sort(key=GF2Subspace.sort_key)
    logger.debug(f"Enumerated {len(result)} subspaces of GF(2)^{n}")
    return result


def brute_force_subspaces(n: int) -> list[GF2Subspace]:
    """Subspaces found by testing every subset of GF(2)^n for additive closure."""
    if n < 1:
        raise PreconditionError("ambient dimension must be positive")
    if n > MAX_BRUTE_FORCE_DIM:
        raise CapacityError(f"brute force is capped at n={MAX_BRUTE_FORCE_DIM}, got {n}")

    size = 1 << n
    found = []
    for mask in range(1, 1 << size, 2):  # odd masks contain the zero vector
        members = [v for v in range(size) if mask >> v & 1]
        if all(mask >> (u ^ v) & 1 for u in members for v in members):
            found.append(GF2Subspace.span(members, n))
    found.sort(key=GF2Subspace.sort_key)
    return found


def restricted_form_rank(form: GF2Matrix, a1: GF2Subspace, a2: GF2Subspace) -> int:
    """Rank of the pairing matrix [form(x_i, y_j)] over the stored bases of a1 and a2."""
    n = form.width
    if form.n_rows != n:
        raise StructuralError("bilinear form must be square")
    if a1.ambient_dim != n or a2.ambient_dim != n:
        raise StructuralError(
            f"ambient dimensions {a1.ambient_dim}, {a2.ambient_dim} do not match form size {n}"
        )
    m = a2.dim
    rows = []
    for x in a1.basis:
        row = 0
        for j, y in enumerate(a2.basis):
            if form.bilinear(x, y):
                row |= 1 << (m - 1 - j)
        rows.append(row)
    return rank_of(rows)
