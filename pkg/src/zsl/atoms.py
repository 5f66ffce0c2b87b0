"""Enumeration of minimal zero-sum sequences and Davenport-type invariants.

The enumerator is a breadth-first completion procedure in the style of
Contejean and Devie: partial multiplicity vectors grow one term at a time,
a term g may extend a partial vector t only when the running sum of t has
negative inner product with g, and any partial vector that componentwise
dominates an already-found minimal solution is discarded.  Complete runs
return the full Hilbert basis of the kernel cone; a length budget acts as a
safety valve and is reported through the ``complete`` flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt

from .ground import GroundSet, RationalSequence, Sequence, lex_positive, negate
from .intlinalg import (
    det_bareiss,
    primitive_kernel_vector,
    rank_over_q,
    smith_normal_form,
)

DEFAULT_BUDGET = 20


@dataclass(frozen=True)
class AtomSet:
    """Atoms of the zero-sum monoid over a ground set, canonically sorted."""

    ground: GroundSet
    atoms: tuple[Sequence, ...]
    complete: bool

    def lengths(self) -> tuple[int, ...]:
        return tuple(a.length for a in self.atoms)

    def max_length(self) -> int:
        return max((a.length for a in self.atoms), default=0)

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "atoms": [list(a.mult) for a in self.atoms],
        }


def enumerate_atoms(ground: GroundSet, budget: int | None = None) -> AtomSet:
    """All componentwise-minimal nonzero solutions of sum(x_g * g) = 0.

    When the search frontier empties before the length budget is hit the
    returned set is the complete Hilbert basis (``complete=True``); otherwise
    every atom of length <= budget is present and ``complete`` is False.
    """
    if budget is None:
        budget = DEFAULT_BUDGET
    n = len(ground)
    vectors = ground.elements
    rank = ground.rank
    zero_sigma = (0,) * rank
    atoms: list[tuple[int, ...]] = []

    def dominates_atom(t):
        return any(all(a <= b for a, b in zip(atom, t)) for atom in atoms)

    frontier: dict[tuple[int, ...], tuple[int, ...]] = {}
    for j, v in enumerate(vectors):
        unit = tuple(int(i == j) for i in range(n))
        frontier[unit] = v
    length = 1
    while frontier and length <= budget:
        extendable = []
        for t, sigma in frontier.items():
            if sigma == zero_sigma:
                if not dominates_atom(t):
                    atoms.append(t)
            else:
                extendable.append((t, sigma))
        next_frontier: dict[tuple[int, ...], tuple[int, ...]] = {}
        for t, sigma in extendable:
            if dominates_atom(t):
                continue
            for j, v in enumerate(vectors):
                if sum(s * x for s, x in zip(sigma, v)) >= 0:
                    continue
                t2 = list(t)
                t2[j] += 1
                t2 = tuple(t2)
                if t2 in next_frontier or dominates_atom(t2):
                    continue
                next_frontier[t2] = tuple(s + x for s, x in zip(sigma, v))
        frontier = next_frontier
        length += 1
    complete = not frontier
    seqs = tuple(Sequence(ground, t) for t in sorted(atoms))
    return AtomSet(ground, seqs, complete)


@dataclass(frozen=True)
class DavenportResult:
    """Largest atom length, exactly or as a certified lower bound."""

    value: int
    exact: bool
    witnesses: tuple[Sequence, ...]

    def to_json(self) -> dict:
        return {
            "davenport": self.value,
            "complete": self.exact,
            "witnesses": [list(w.mult) for w in self.witnesses],
        }


def davenport(source, budget: int | None = None) -> DavenportResult:
    """Davenport constant of a ground set (or of a precomputed atom set)."""
    atom_set = source if isinstance(source, AtomSet) else enumerate_atoms(source, budget)
    best = atom_set.max_length()
    witnesses = tuple(a for a in atom_set.atoms if a.length == best and best > 0)
    return DavenportResult(best, atom_set.complete, witnesses)


def _signed_support_representatives(seq) -> list:
    """One vector per {g, -g} pair of the signed support, chosen canonically."""
    reps = {}
    for v in seq.signed_support():
        key = v if lex_positive(v) else negate(v)
        reps[key] = key
    return sorted(reps)


def _is_circuit(vectors) -> bool:
    """Dependent over Q, with every proper subset independent."""
    k = len(vectors)
    if k == 0:
        return False
    cols = [[v[i] for v in vectors] for i in range(len(vectors[0]))]
    if rank_over_q(cols) != k - 1:
        return False
    for drop in range(k):
        sub = [v for i, v in enumerate(vectors) if i != drop]
        subcols = [[v[i] for v in sub] for i in range(len(vectors[0]))]
        if rank_over_q(subcols) != k - 1:
            return False
    return True


def is_elementary(seq) -> bool:
    """Whether a zero-sum sequence has nonempty minimal signed support.

    Works through the support characterization: the one-per-pair
    representatives of the signed support must form a circuit (dependent,
    every proper subset independent).  The result does not depend on the
    chosen sign partition.
    """
    if not seq.is_zero_sum():
        raise ValueError("is_elementary needs a zero-sum sequence")
    reps = _signed_support_representatives(seq)
    if not reps:
        return False
    return _is_circuit(reps)


def is_elementary_by_search(seq, atom_set: AtomSet | None = None) -> bool:
    """Direct-search oracle for ``is_elementary``.

    A zero-sum sequence fails to be elementary exactly when some atom of
    length >= 3 has strictly smaller nonempty signed support, so scanning a
    complete atom set decides the question independently of any rank
    computation.
    """
    if not seq.is_zero_sum():
        raise ValueError("is_elementary_by_search needs a zero-sum sequence")
    x = seq.signed_support()
    if not x:
        return False
    if atom_set is None:
        atom_set = enumerate_atoms(seq.ground)
    if not atom_set.complete:
        raise ValueError("direct search needs a complete atom set")
    for atom in atom_set.atoms:
        y = atom.signed_support()
        if y and y < x:
            return False
    return True


def circuit_length(vectors) -> int:
    """Sum over i of |det with column i removed|, divided by their gcd.

    For r+1 vectors spanning Q^r this is the 1-norm of the primitive kernel
    relation, hence the length of the atom supported on the tuple when one is
    realizable; it is 0 when the span has rank below r.
    """
    vecs = [tuple(int(x) for x in v) for v in vectors]
    if not vecs:
        raise ValueError("empty tuple")
    r = len(vecs[0])
    if len(vecs) != r + 1:
        raise ValueError(f"need {r + 1} vectors of dimension {r}, got {len(vecs)}")
    for v in vecs:
        if len(v) != r:
            raise ValueError("vector dimension mismatch")
    dets = []
    for drop in range(r + 1):
        cols = [v for i, v in enumerate(vecs) if i != drop]
        matrix = [[cols[j][i] for j in range(r)] for i in range(r)]
        dets.append(abs(det_bareiss(matrix)))
    g = 0
    for d in dets:
        g = gcd(g, d)
    if g == 0:
        return 0
    return sum(dets) // g


def has_elementary_atom(ground: GroundSet, budget: int | None = None) -> bool:
    """Existence of an elementary atom (equivalently, of any atom of length >= 3)."""
    atom_set = enumerate_atoms(ground, budget)
    if any(a.length >= 3 for a in atom_set.atoms):
        return True
    if not atom_set.complete:
        raise ValueError("enumeration truncated before settling elementary existence")
    return False


def elementary_davenport(ground: GroundSet, method: str = "enumerate",
                         budget: int | None = None):
    """Largest elementary atom length, by filtering atoms or by determinants.

    method='enumerate' filters a complete atom enumeration through
    ``is_elementary``.  method='formula' takes the supremum of
    ``circuit_length`` over (r+1)-tuples of ground elements, restricted to
    tuples over which an atom of length >= 3 exists; for symmetric ground
    sets the restriction is vacuous.  method='both' cross-checks the two.
    """
    if method == "both":
        a = elementary_davenport(ground, "enumerate", budget)
        b = elementary_davenport(ground, "formula", budget)
        if a != b:
            raise AssertionError(f"elementary Davenport mismatch: enumerate={a} formula={b}")
        return a
    if method == "enumerate":
        atom_set = enumerate_atoms(ground, budget)
        if not atom_set.complete:
            raise ValueError("enumeration truncated; rerun with a larger budget")
        return max((a.length for a in atom_set.atoms if is_elementary(a)), default=0)
    if method != "formula":
        raise ValueError(f"unknown method {method!r}")

    r = ground.rank
    cols = [[v[i] for v in ground.elements] for i in range(r)]
    actual_rank = rank_over_q(cols)
    if actual_rank < r:
        raise ValueError(
            f"ground set spans rank {actual_rank} < {r}; re-embed it into "
            f"Z^{actual_rank} before using the determinant formula")
    symmetric = ground.is_symmetric()
    if symmetric:
        pool = sorted({v if lex_positive(v) else negate(v)
                       for v in ground.elements if any(v)})
    else:
        pool = [v for v in ground.elements if any(v)]
    candidates = []
    for combo in combinations(pool, r + 1):
        d = circuit_length(combo)
        if d >= 3:
            candidates.append((d, combo))
    candidates.sort(key=lambda t: -t[0])
    for d, combo in candidates:
        if symmetric or _tuple_supports_long_atom(ground.rank, combo, d):
            return d
    return 0


def _tuple_supports_long_atom(rank: int, combo, delta: int) -> bool:
    """Side condition of the determinant formula: the tuple carries an atom of
    length >= 3 on its own."""
    sub = GroundSet.from_elements(rank, sorted(set(combo)))
    atom_set = enumerate_atoms(sub, budget=max(delta, 2) + 1)
    if any(a.length >= 3 for a in atom_set.atoms):
        return True
    if not atom_set.complete:
        raise ValueError("sub-enumeration truncated while checking a tuple")
    return False


def _is_hypercube_subset(ground: GroundSet) -> bool:
    """Every element is a 0/1 vector or the negative of one."""
    for v in ground.elements:
        if not any(v):
            return False
        if all(x in (0, 1) for x in v):
            continue
        if all(x in (0, -1) for x in v):
            continue
        return False
    return True


def hypercube_davenport_ceiling(r: int) -> int:
    """floor(((2^r - r - 1) / 2^r) * (r + 2)^((r + 2) / 2)), exactly.

    The half-integer power is handled through an integer square root so the
    floor is computed without floating point.
    """
    a = (1 << r) - r - 1
    if r % 2 == 0:
        return a * (r + 2) ** ((r + 2) // 2) >> r
    b = a * (r + 2) ** ((r + 1) // 2)
    return isqrt(b * b * (r + 2)) >> r


def davenport_upper_bounds(ground: GroundSet, atom_set: AtomSet | None = None) -> dict:
    """Certified upper bounds for the (elementary) Davenport constant.

    Returns a report with keys ``snf_G0``, ``snf_G1`` (largest elementary
    divisors of augmented column submatrices; these bound the elementary
    Davenport constant), ``hadamard`` (hypercube ground sets only), ``dgs``
    (the lattice-geometry bound), and ``elm_product`` (elementary-count times
    elementary-Davenport bound for the Davenport constant itself).
    """
    r = ground.rank
    cols = [[v[i] for v in ground.elements] for i in range(r)]
    if rank_over_q(cols) != r:
        raise ValueError("upper bounds need a ground set of full rank; re-embed first")
    report: dict = {"rank": r, "certifies": "davenport-upper-bounds"}

    if atom_set is None:
        atom_set = enumerate_atoms(ground)
    dav = davenport(atom_set)
    report["davenport"] = dav.value if dav.exact else None

    long_atom = any(a.length >= 3 for a in atom_set.atoms)
    if long_atom:
        report["snf_G0"] = 2 * _max_last_divisor(_augmented_columns(ground, both_signs=False))
        report["snf_G1"] = _max_last_divisor(_augmented_columns(ground, both_signs=True))
    else:
        report["snf_G0"] = None
        report["snf_G1"] = None
        report["skipped"] = "largest atom length is below 3, augmented bounds do not apply"

    report["hadamard"] = hypercube_davenport_ceiling(r) if _is_hypercube_subset(ground) else None

    plus_cols = [ground.elements[i] for i in ground.plus_indices]
    best = 0
    for combo in combinations(plus_cols, r):
        matrix = [[combo[j][i] for j in range(r)] for i in range(r)]
        best = max(best, abs(det_bareiss(matrix)))
    report["dgs"] = (2 * r) ** r * (r + 1) ** (r + 1) * best

    delm = max((a.length for a in atom_set.atoms if is_elementary(a)), default=0)
    eta = max((len(a.support()) for a in atom_set.atoms), default=0)
    report["elm_product"] = max(2, min(eta, len(ground.plus_indices) - r) * delm)
    report["elm_product_conditional"] = not atom_set.complete
    return report


def _augmented_columns(ground: GroundSet, both_signs: bool) -> list[tuple[int, ...]]:
    up = [v + (1,) for v in ground.elements]
    if both_signs:
        down = [v + (-1,) for v in ground.elements]
    else:
        down = [v + (0,) for v in ground.elements]
    return up + down


def _max_last_divisor(columns) -> int:
    """Largest final elementary divisor over nonsingular square column choices."""
    dim = len(columns[0])
    best = 0
    for combo in combinations(columns, dim):
        matrix = [[combo[j][i] for j in range(dim)] for i in range(dim)]
        diag = smith_normal_form(matrix)
        if diag[-1]:
            best = max(best, diag[-1])
    return best


@dataclass(frozen=True)
class ElementaryDecomposition:
    """A zero-sum sequence written as balanced-part times rational powers of
    elementary atoms."""

    balanced: RationalSequence
    parts: tuple[tuple[Sequence, Fraction], ...]

    @property
    def ell(self) -> int:
        return len(self.parts)

    def reassemble(self) -> RationalSequence:
        total = self.balanced
        for atom, alpha in self.parts:
            total = total * atom.rational().scaled(alpha)
        return total

    def to_json(self) -> dict:
        return {
            "balanced": self.balanced.to_json(),
            "parts": [{"atom": list(a.mult), "exponent": _frac_str(x)}
                      for a, x in self.parts],
        }


def _frac_str(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class _SupportAtomCache:
    """Atoms of the zero-sum monoid restricted to a support, memoized.

    Decomposing many sequences over the same ground set re-enumerates the
    same restricted Hilbert bases; keying by support keeps that linear.
    """

    def __init__(self):
        self._store: dict[tuple[GroundSet, tuple[int, ...]], tuple[Sequence, ...]] = {}

    def atoms_on(self, ground: GroundSet, support: tuple[int, ...]) -> tuple[Sequence, ...]:
        key = (ground, support)
        if key not in self._store:
            sub = ground.restrict(support)
            sub_atoms = enumerate_atoms(sub)
            if not sub_atoms.complete:
                raise RuntimeError("restricted atom enumeration truncated")
            lifted = []
            for atom in sub_atoms.atoms:
                mult = [0] * len(ground)
                for i, m in zip(sorted(support), atom.mult):
                    mult[i] = m
                lifted.append(Sequence(ground, tuple(mult)))
            self._store[key] = tuple(lifted)
        return self._store[key]


_support_cache = _SupportAtomCache()


def rational_elementary_decomposition(seq) -> ElementaryDecomposition:
    """Greedy peel of a rational zero-sum sequence into elementary atoms.

    After splitting off the balanced part, the reduced sequence always admits
    an elementary atom supported inside its support; peeling with the minimal
    multiplicity ratio empties one support coordinate per step, so the number
    of parts is bounded by half the signed support and by the kernel
    dimension of the ground columns.
    """
    if not seq.is_zero_sum():
        raise ValueError("decomposition needs a zero-sum sequence")
    s = seq.rational() if isinstance(seq, Sequence) else seq
    balanced, current = s.split_balanced()
    ground = s.ground
    parts: list[tuple[Sequence, Fraction]] = []
    while not current.is_trivial():
        support = current.support()
        candidates = [a for a in _support_cache.atoms_on(ground, support)
                      if set(a.support()) <= set(support) and is_elementary(a)]
        if not candidates:
            raise RuntimeError("no elementary atom inside the support; "
                               "the input was not a zero-sum sequence over its ground set")
        atom = min(candidates, key=lambda a: a.mult)
        alpha = min(Fraction(current.mult[i]) / atom.mult[i] for i in atom.support())
        current = current.remove(atom.rational().scaled(alpha))
        if atom.signed_support() <= current.signed_support():
            raise AssertionError("peeled atom signed support survived into the tail")
        parts.append((atom, alpha))
    return ElementaryDecomposition(balanced, tuple(parts))


def ell_bound(seq) -> int:
    """Cap on the number of parts in an elementary decomposition of seq."""
    ground = seq.ground
    r_cols = [[v[i] for v in ground.elements] for i in range(ground.rank)]
    kernel_dim = len(ground.plus_indices) - rank_over_q(r_cols)
    return min(len(seq.signed_support()) // 2, kernel_dim)


def unique_elementary_atom(ground: GroundSet, signed_set):
    """The atom (unique up to sign) carried by a candidate signed support.

    ``signed_set`` must be symmetric and contained in G0 union -G0.  Returns
    None when the set is not the signed support of any elementary zero-sum
    sequence over the ground set.  The sign is normalized so the first
    positive-part element of the set gets positive net multiplicity.
    """
    x = {tuple(c for c in v) for v in signed_set}
    if {negate(v) for v in x} != x:
        raise ValueError("signed support candidates must be symmetric")
    for v in x:
        if not (ground.contains(v) or ground.contains(negate(v))):
            raise ValueError(f"{v} is outside the ground set and its negation")
        if not any(v):
            raise ValueError("signed supports never contain the zero vector")
    if not x:
        return None
    reps = sorted({v if lex_positive(v) else negate(v) for v in x})
    if not _is_circuit(reps):
        return None
    kernel = primitive_kernel_vector([list(v) for v in reps])
    if kernel is None:
        return None

    def realize(coeffs):
        mult = [0] * len(ground)
        for v, c in zip(reps, coeffs):
            if c > 0:
                if not ground.contains(v):
                    return None
                mult[ground.position(v)] += c
            elif c < 0:
                if not ground.contains(negate(v)):
                    return None
                mult[ground.position(negate(v))] += -c
        return Sequence(ground, tuple(mult))

    options = [s for s in (realize(kernel), realize([-c for c in kernel])) if s]
    if not options:
        return None
    anchor = next(i for i, v in enumerate(ground.elements)
                  if ground.plus[i] and (v in x))
    preferred = [s for s in options
                 if s.net_multiplicities()[ground.plus_indices.index(anchor)] > 0]
    return (preferred or options)[0]


def brute_force_atoms(ground: GroundSet, max_length: int) -> list[Sequence]:
    """Independent oracle: scan every multiplicity vector of bounded length.

    Minimality is decided by exhaustively checking all proper nonzero
    sub-vectors for zero sums.  Exponential; only for small cross-checks.
    """
    n = len(ground)
    zero = (0,) * ground.rank

    def vectors_of_length(total, pos):
        if pos == n - 1:
            yield (total,)
            return
        for m in range(total + 1):
            for rest in vectors_of_length(total - m, pos + 1):
                yield (m,) + rest

    def sub_vectors(t):
        ranges = [range(m + 1) for m in t]

        def rec(i):
            if i == n:
                yield ()
                return
            for head in ranges[i]:
                for rest in rec(i + 1):
                    yield (head,) + rest

        yield from rec(0)

    found = []
    for total in range(1, max_length + 1):
        for t in vectors_of_length(total, 0):
            s = Sequence(ground, t)
            if s.sum_vector() != zero:
                continue
            minimal = True
            for sub in sub_vectors(t):
                if sub == t or not any(sub):
                    continue
                if Sequence(ground, sub).sum_vector() == zero:
                    minimal = False
                    break
            if minimal:
                found.append(s)
    return sorted(found, key=lambda s: s.mult)
