"""Pauli strings and stabilizer groups in binary-symplectic form.

A Pauli string on n qubits is stored as two n-bit masks (x_bits, z_bits)
plus a phase exponent k meaning i**k times the tensor product of single
qubit letters, where the letter on qubit j is I, X, Z or Y according to
the (x, z) bit pair (Y when both bits are set). Hermitian strings, which
include every stabilizer generator, have k in {0, 2}, i.e. sign +1 or -1.

Bit j of a mask is qubit j, so masks are plain Python ints and XOR,
AND and int.bit_count give the group algebra in O(words).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _LETTERS.items()}
_SIGN_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}


@dataclass(frozen=True)
class PauliString:
    """An n-qubit Pauli operator i**phase * (letter_0 x ... x letter_{n-1})."""

    num_qubits: int
    x_bits: int
    z_bits: int
    phase: int = 0

    def __post_init__(self) -> None:
        mask = (1 << self.num_qubits) - 1
        if self.num_qubits < 0:
            raise ValueError("num_qubits must be non-negative")
        if self.x_bits & ~mask or self.z_bits & ~mask:
            raise ValueError("bit mask exceeds qubit count")
        if not 0 <= self.phase < 4:
            object.__setattr__(self, "phase", self.phase % 4)

    # ----- constructors -----

    @classmethod
    def identity(cls, num_qubits: int) -> "PauliString":
        return cls(num_qubits, 0, 0, 0)

    @classmethod
    def from_ops(cls, num_qubits: int, ops: dict[int, str], sign: int = 1) -> "PauliString":
        """Build from {qubit: letter}, e.g. from_ops(4, {0: "X", 1: "Z"}).

        sign is +1 or -1.
        """
        x = z = 0
        for q, letter in ops.items():
            if not 0 <= q < num_qubits:
                raise ValueError(f"qubit {q} out of range")
            xb, zb = _BITS[letter]
            x |= xb << q
            z |= zb << q
        return cls(num_qubits, x, z, 0 if sign == 1 else 2)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse "+XIZY" style labels, qubit 0 leftmost. Prefix may be
        +, -, +i, -i or absent (meaning +)."""
        phase = 0
        body = label
        for prefix, k in (("+i", 1), ("-i", 3), ("+", 0), ("-", 2)):
            if label.startswith(prefix):
                phase, body = k, label[len(prefix):]
                break
        x = z = 0
        for q, letter in enumerate(body):
            if letter not in _BITS:
                raise ValueError(f"bad Pauli letter {letter!r}")
            xb, zb = _BITS[letter]
            x |= xb << q
            z |= zb << q
        return cls(len(body), x, z, phase)

    # ----- basic queries -----

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian strings."""
        if not self.is_hermitian:
            raise ValueError("sign undefined for non-Hermitian string")
        return 1 if self.phase == 0 else -1

    @property
    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    @property
    def weight(self) -> int:
        return (self.x_bits | self.z_bits).bit_count()

    def support(self) -> tuple[int, ...]:
        bits = self.x_bits | self.z_bits
        return tuple(q for q in range(self.num_qubits) if bits >> q & 1)

    def letter(self, q: int) -> str:
        return _LETTERS[(self.x_bits >> q & 1, self.z_bits >> q & 1)]

    def __str__(self) -> str:
        body = "".join(self.letter(q) for q in range(self.num_qubits))
        return _SIGN_PREFIX[self.phase] + body

    # ----- algebra -----

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.num_qubits != other.num_qubits:
            raise ValueError("qubit counts differ")
        x1, z1, x2, z2 = self.x_bits, self.z_bits, other.x_bits, other.z_bits
        x3, z3 = x1 ^ x2, z1 ^ z2
        # Per-qubit phase bookkeeping for letter products, summed via popcounts.
        phase = (
            self.phase
            + other.phase
            + (x1 & z1).bit_count()
            + (x2 & z2).bit_count()
            + 2 * (z1 & x2).bit_count()
            - (x3 & z3).bit_count()
        ) % 4
        return PauliString(self.num_qubits, x3, z3, phase)

    def commutes_with(self, other: "PauliString") -> bool:
        """Symplectic inner product: even overlap count means commuting."""
        anti = (self.x_bits & other.z_bits).bit_count() + (self.z_bits & other.x_bits).bit_count()
        return anti % 2 == 0

    def conjugate_hadamard(self, q: int) -> "PauliString":
        """H on qubit q: X <-> Z there; a Y picks up a sign flip."""
        bit = 1 << q
        x, z = self.x_bits, self.z_bits
        new_x = (x & ~bit) | (bit if z & bit else 0)
        new_z = (z & ~bit) | (bit if x & bit else 0)
        phase = (self.phase + (2 if (x & z & bit) else 0)) % 4
        return PauliString(self.num_qubits, new_x, new_z, phase)


def _gf2_rank(rows: Iterable[int]) -> int:
    """Rank of bit-mask rows over GF(2)."""
    rank = 0
    pivots: list[int] = []
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
            pivots.sort(reverse=True)
            rank += 1
    return rank


@dataclass(frozen=True)
class StabilizerGroup:
    """A maximal stabilizer group: n independent commuting Hermitian
    generators with sign +1 or -1 on n qubits.

    Instances are immutable; every operation returns a new group.
    Validity (commutation, independence, Hermiticity) is asserted on
    construction, so any reachable instance is a genuine stabilizer group.
    """

    num_qubits: int
    generators: tuple[PauliString, ...]

    def __post_init__(self) -> None:
        n = self.num_qubits
        gens = self.generators
        if len(gens) != n:
            raise ValueError(f"need exactly {n} generators, got {len(gens)}")
        for g in gens:
            if g.num_qubits != n:
                raise ValueError("generator qubit count mismatch")
            if not g.is_hermitian:
                raise ValueError(f"generator {g} is not Hermitian")
            if g.is_identity:
                raise ValueError("identity cannot be a generator")
        for i in range(n):
            for j in range(i + 1, n):
                if not gens[i].commutes_with(gens[j]):
                    raise ValueError(f"generators {i} and {j} anticommute")
        rows = [g.x_bits | (g.z_bits << n) for g in gens]
        if _gf2_rank(rows) != n:
            raise ValueError("generators are not independent")

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "StabilizerGroup":
        gens = tuple(PauliString.from_label(s) for s in labels)
        if not gens:
            raise ValueError("empty generator list")
        return cls(gens[0].num_qubits, gens)

    def __iter__(self):
        return iter(self.generators)

    # ----- Clifford conjugation -----

    def apply_hadamard(self, q: int) -> "StabilizerGroup":
        if not 0 <= q < self.num_qubits:
            raise ValueError(f"qubit {q} out of range")
        return StabilizerGroup(
            self.num_qubits,
            tuple(g.conjugate_hadamard(q) for g in self.generators),
        )

    # ----- membership -----

    def _reduce(self, p: PauliString) -> PauliString:
        """Multiply p by canonical rows to clear its bits where possible.

        If the residual is (phase-only times) identity, p is in the group
        up to that phase.
        """
        q = p
        for row, col in _canonical_rows_with_pivots(self):
            if (q.x_bits | (q.z_bits << self.num_qubits)) >> col & 1:
                q = q * row
        return q

    def is_stabilized_by(self, p: PauliString) -> bool:
        """True iff p, with its sign, is an element of the group."""
        if p.num_qubits != self.num_qubits:
            raise ValueError("qubit counts differ")
        residual = self._reduce(p)
        return residual.is_identity and residual.phase == 0

    # ----- measurement -----

    def measure_zz_postselect(self, q1: int, q2: int) -> tuple[float, "StabilizerGroup | None"]:
        """Measure Z_q1 Z_q2 and keep the +1 outcome.

        Returns (probability, group after projection). Three cases:
        the observable anticommutes with some generator (probability 1/2),
        it is in the group with sign +1 (probability 1, state unchanged),
        or with sign -1 (probability 0; the postselection is impossible
        and None is returned for the state).
        """
        n = self.num_qubits
        if q1 == q2:
            raise ValueError("need two distinct qubits")
        observable = PauliString.from_ops(n, {q1: "Z", q2: "Z"})
        anti = [i for i, g in enumerate(self.generators) if not g.commutes_with(observable)]
        if anti:
            first = anti[0]
            g = self.generators[first]
            new_gens = list(self.generators)
            for i in anti[1:]:
                new_gens[i] = new_gens[i] * g
            new_gens[first] = observable
            return 0.5, StabilizerGroup(n, tuple(new_gens))
        residual = self._reduce(observable)
        if not residual.is_identity:
            raise AssertionError("observable commutes with a maximal group but is not in it")
        if residual.phase == 0:
            return 1.0, self
        return 0.0, None

    # ----- canonical form -----

    def canonical_form(self) -> "StabilizerGroup":
        """Unique reduced row echelon form over columns
        (x_0..x_{n-1}, z_0..z_{n-1}), signs carried by the row products.

        Two groups are equal as groups iff their canonical forms have
        identical generator tuples.
        """
        rows = [r for r, _ in _canonical_rows_with_pivots(self)]
        return StabilizerGroup(self.num_qubits, tuple(rows))

    def equals_group(self, other: "StabilizerGroup") -> bool:
        if self.num_qubits != other.num_qubits:
            return False
        return self.canonical_form().generators == other.canonical_form().generators


def _canonical_rows_with_pivots(group: StabilizerGroup) -> list[tuple[PauliString, int]]:
    """RREF rows of the group with their pivot columns.

    Column c < n is x_c, column n + c is z_c. Row operations are Pauli
    multiplications so phases stay consistent.
    """
    n = group.num_qubits
    rows = list(group.generators)

    def bits(p: PauliString) -> int:
        return p.x_bits | (p.z_bits << n)

    pivots: list[int] = []
    pivot_row = 0
    for col in range(2 * n):
        found = None
        for i in range(pivot_row, len(rows)):
            if bits(rows[i]) >> col & 1:
                found = i
                break
        if found is None:
            continue
        rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
        # Clear the column everywhere else, including rows already
        # pivoted, so the result is fully reduced, not just echelon.
        for i in range(len(rows)):
            if i != pivot_row and bits(rows[i]) >> col & 1:
                rows[i] = rows[i] * rows[pivot_row]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return list(zip(rows[: len(pivots)], pivots))
