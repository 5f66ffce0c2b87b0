"""Factorization invariants of finitely generated reduced monoids.

A monoid is presented by its atom vectors inside N0^m.  In ``saturated`` mode
an element a divides b exactly when b - a is componentwise nonnegative (the
right notion for zero-sum monoids and for divisor-theory images, which are
saturated in the ambient free monoid); ``solver`` mode additionally requires
b - a to factor into atoms.

Factorization searches are depth-first over the atoms in decreasing length
order with residual-feasibility pruning; set-level invariants (catenary,
omega, tau, tame degree, unions of sets of lengths) are derived from the
searches.  Everything is deterministic: outputs are canonically sorted.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb

from .atoms import AtomSet


@dataclass(frozen=True)
class PresentedMonoid:
    ambient_dim: int
    atoms: tuple[tuple[int, ...], ...]
    mode: str = "saturated"

    def __post_init__(self):
        if self.mode not in ("saturated", "solver"):
            raise ValueError(f"unknown divisibility mode {self.mode!r}")
        atoms = tuple(tuple(int(x) for x in a) for a in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        for a in atoms:
            if len(a) != self.ambient_dim:
                raise ValueError("atom dimension does not match ambient dimension")
            if not any(a):
                raise ValueError("the zero vector cannot be an atom")
            if any(x < 0 for x in a):
                raise ValueError("atom vectors must be nonnegative")
        for a, b in combinations_with_replacement(atoms, 2):
            if a != b and (_leq(a, b) or _leq(b, a)):
                raise ValueError("atoms must be pairwise incomparable")
        order = sorted(range(len(atoms)), key=lambda i: (-sum(atoms[i]), atoms[i]))
        object.__setattr__(self, "_search_order", tuple(order))
        masks = []
        seen = [False] * self.ambient_dim
        for pos in range(len(order) - 1, -1, -1):
            for i, x in enumerate(atoms[order[pos]]):
                if x:
                    seen[i] = True
            masks.append(tuple(seen))
        masks.reverse()
        object.__setattr__(self, "_cover_masks", tuple(masks))

    @property
    def atom_count(self) -> int:
        return len(self.atoms)

    def atom_lengths(self) -> tuple[int, ...]:
        return tuple(sum(a) for a in self.atoms)

    def element(self, counts) -> tuple[int, ...]:
        """Image of a factorization-count vector: sum of count_i * atom_i."""
        x = [0] * self.ambient_dim
        for c, a in zip(counts, self.atoms):
            if c:
                for i, v in enumerate(a):
                    x[i] += c * v
        return tuple(x)

    def divides(self, a, b) -> bool:
        diff = tuple(y - x for x, y in zip(a, b))
        if any(d < 0 for d in diff):
            return False
        if self.mode == "saturated":
            return True
        return not any(diff) or _exists_factorization(self, diff)


def _leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def block_monoid(atom_set: AtomSet) -> PresentedMonoid:
    """The zero-sum monoid presented by a complete atom enumeration."""
    if not atom_set.complete:
        raise ValueError("a truncated atom set does not present the monoid")
    return PresentedMonoid(len(atom_set.ground),
                           tuple(a.mult for a in atom_set.atoms), "saturated")


def free_monoid(k: int) -> PresentedMonoid:
    basis = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    return PresentedMonoid(k, basis, "saturated")


@dataclass(frozen=True)
class Factorization:
    counts: tuple[int, ...]

    @property
    def length(self) -> int:
        return sum(self.counts)


def factorizations(monoid: PresentedMonoid, x) -> list[Factorization]:
    """All ways to write x as a nonnegative combination of the atoms.

    Empty exactly when x is not in the monoid.  Output sorted by count
    vector, so results are schedule-independent.
    """
    x = tuple(int(v) for v in x)
    if len(x) != monoid.ambient_dim:
        raise ValueError("element dimension mismatch")
    if any(v < 0 for v in x):
        raise ValueError("element vectors must be nonnegative")
    order = monoid._search_order
    masks = monoid._cover_masks
    results: list[tuple[int, ...]] = []
    counts = [0] * monoid.atom_count

    def rec(pos: int, residual: tuple[int, ...]):
        if not any(residual):
            results.append(tuple(counts))
            return
        if pos == len(order):
            return
        mask = masks[pos]
        if any(r and not m for r, m in zip(residual, mask)):
            return
        atom = monoid.atoms[order[pos]]
        cap = min(r // a for r, a in zip(residual, atom) if a)
        for c in range(cap, -1, -1):
            counts[order[pos]] = c
            rec(pos + 1, tuple(r - c * a for r, a in zip(residual, atom)))
        counts[order[pos]] = 0

    rec(0, x)
    return [Factorization(c) for c in sorted(results)]


def _exists_factorization(monoid: PresentedMonoid, x) -> bool:
    order = monoid._search_order
    masks = monoid._cover_masks

    def rec(pos, residual):
        if not any(residual):
            return True
        if pos == len(order):
            return False
        if any(r and not m for r, m in zip(residual, masks[pos])):
            return False
        atom = monoid.atoms[order[pos]]
        cap = min(r // a for r, a in zip(residual, atom) if a)
        return any(rec(pos + 1, tuple(r - c * a for r, a in zip(residual, atom)))
                   for c in range(cap, -1, -1))

    return rec(0, tuple(x))


def set_of_lengths(monoid: PresentedMonoid, x) -> tuple[int, ...]:
    return tuple(sorted({z.length for z in factorizations(monoid, x)}))


def delta_set(lengths) -> set[int]:
    """Gaps between consecutive members of a set of lengths."""
    ls = sorted(set(lengths))
    return {b - a for a, b in zip(ls, ls[1:])}


def distance(z: Factorization, w: Factorization) -> int:
    """max of the two reduced lengths after cancelling the common part."""
    common = tuple(min(a, b) for a, b in zip(z.counts, w.counts))
    dz = sum(a - c for a, c in zip(z.counts, common))
    dw = sum(b - c for b, c in zip(w.counts, common))
    return max(dz, dw)


def catenary_from_factorizations(zs) -> int:
    """Least N whose distance-at-most-N graph on the given factorizations is
    connected: the bottleneck edge of a minimum spanning tree."""
    k = len(zs)
    if k <= 1:
        return 0
    edges = sorted((distance(zs[i], zs[j]), i, j)
                   for i in range(k) for j in range(i + 1, k))
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    remaining = k - 1
    for d, i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            remaining -= 1
            if not remaining:
                return d
    raise AssertionError("distance graph must be connected")


def catenary_element(monoid: PresentedMonoid, x) -> int:
    zs = factorizations(monoid, x)
    if not zs:
        raise ValueError("element is not in the monoid")
    return catenary_from_factorizations(zs)


def _length_band(monoid: PresentedMonoid, x) -> tuple[int, int] | None:
    """Necessary range for factorization lengths of x, or None when x = 0."""
    total = sum(x)
    if not total:
        return None
    lens = monoid.atom_lengths()
    if not lens:
        return (1, 0)
    lmin, lmax = min(lens), max(lens)
    return (-(-total // lmax), total // lmin)


def min_length(monoid: PresentedMonoid, x) -> int | None:
    """Shortest factorization length, by an ascending exists-length scan."""
    band = _length_band(monoid, x)
    if band is None:
        return 0
    for target in range(band[0], band[1] + 1):
        if exists_length(monoid, x, target):
            return target
    return None


def max_length(monoid: PresentedMonoid, x) -> int | None:
    """Longest factorization length, by a descending exists-length scan."""
    band = _length_band(monoid, x)
    if band is None:
        return 0
    for target in range(band[1], band[0] - 1, -1):
        if exists_length(monoid, x, target):
            return target
    return None


def exists_length(monoid: PresentedMonoid, x, target: int) -> bool:
    """Whether x factors into exactly ``target`` atoms.

    Depth-first with banding: with k picks left the residual length must sit
    between k * (shortest atom) and k * (longest atom).
    """
    x = tuple(int(v) for v in x)
    order = monoid._search_order
    masks = monoid._cover_masks
    lengths = [sum(monoid.atoms[i]) for i in order]
    if not lengths:
        return target == 0 and not any(x)
    lmax = max(lengths)
    lmin = min(lengths)

    def rec(pos, residual, left):
        total = sum(residual)
        if not total:
            return left == 0
        if pos == len(order) or left == 0:
            return False
        if total < left * lmin or total > left * lmax:
            return False
        if any(r and not m for r, m in zip(residual, masks[pos])):
            return False
        atom = monoid.atoms[order[pos]]
        cap = min(r // a for r, a in zip(residual, atom) if a)
        cap = min(cap, left)
        return any(rec(pos + 1, tuple(r - c * a for r, a in zip(residual, atom)),
                       left - c)
                   for c in range(cap, -1, -1))

    return rec(0, x, target)


@dataclass(frozen=True)
class UnionOfLengths:
    k: int
    values: frozenset[int]
    rho: int
    lam: int
    exhaustive: bool

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "values": sorted(self.values),
            "rho": self.rho,
            "lambda": self.lam,
            "exhaustive": self.exhaustive,
        }


def _distinct_k_fold_sums(monoid: PresentedMonoid, k: int) -> set[tuple[int, ...]]:
    sums: set[tuple[int, ...]] = set()
    n = monoid.atom_count

    def rec(start, left, acc):
        if left == 0:
            sums.add(acc)
            return
        for i in range(start, n):
            rec(i, left - 1, tuple(x + y for x, y in zip(acc, monoid.atoms[i])))

    rec(0, k, (0,) * monoid.ambient_dim)
    return sums


def _sums_with_min_total(monoid: PresentedMonoid, k: int, min_total: int):
    """Distinct sums of k atoms whose total length is at least min_total."""
    idx = sorted(range(monoid.atom_count), key=lambda i: -sum(monoid.atoms[i]))
    lens = [sum(monoid.atoms[i]) for i in idx]
    sums: set[tuple[int, ...]] = set()

    def rec(pos, left, total, acc):
        if left == 0:
            if total >= min_total:
                sums.add(acc)
            return
        for p in range(pos, len(idx)):
            if total + left * lens[p] < min_total:
                break
            rec(p, left - 1, total + lens[p],
                tuple(x + y for x, y in zip(acc, monoid.atoms[idx[p]])))

    rec(0, k, 0, (0,) * monoid.ambient_dim)
    return sums


def union_of_lengths(monoid: PresentedMonoid, k: int, strategy: str = "auto",
                     budget: int = 500_000) -> UnionOfLengths:
    """The union of all sets of lengths containing k, with its extremes.

    A length l lies in the union exactly when some element is simultaneously
    a sum of k atoms and of l atoms.  strategy='exhaustive' walks every
    distinct k-fold atom sum and unions its set of lengths; 'extremes'
    computes the exact maximum (rho_k) and minimum (lambda_k) by a
    target-length search with total-length pruning, leaving the full value
    set partial.  'auto' picks by multiset count against the budget.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if monoid.atom_count == 0:
        raise ValueError("monoid has no atoms")
    if strategy == "auto":
        strategy = "exhaustive" if comb(monoid.atom_count + k - 1, k) <= budget else "extremes"
    if strategy == "exhaustive":
        values: set[int] = set()
        for s in _distinct_k_fold_sums(monoid, k):
            values.update(set_of_lengths(monoid, s))
        return UnionOfLengths(k, frozenset(values), max(values), min(values), True)
    if strategy != "extremes":
        raise ValueError(f"unknown strategy {strategy!r}")

    lens = monoid.atom_lengths()
    lmin, lmax = min(lens), max(lens)
    rho = k
    for target in range(k * lmax // lmin, k, -1):
        found = False
        for s in _sums_with_min_total(monoid, k, target * lmin):
            if exists_length(monoid, s, target):
                found = True
                break
        if found:
            rho = target
            break
    lam = k
    for target in range(max(1, -(-k * lmin // lmax)), k):
        found = False
        for s in _sums_with_min_total(monoid, target, k * lmin):
            if exists_length(monoid, s, k):
                found = True
                break
        if found:
            lam = target
            break
    return UnionOfLengths(k, frozenset({lam, k, rho}), rho, lam, False)


def minimal_covers(monoid: PresentedMonoid, atom_index: int,
                   cap: int | None = None) -> list[tuple[int, ...]]:
    """Componentwise-minimal atom multisets whose product is divisible by the
    given atom, as factorization-count vectors.

    Breadth-first over multisets in nondecreasing index order; a multiset is
    recorded once it covers, and it is minimal exactly when no single removal
    still covers (cover sets are upward closed).  For saturated monoids every
    minimal cover has size at most the coordinate sum of the atom, which
    bounds the search.
    """
    u = monoid.atoms[atom_index]
    if cap is None:
        if monoid.mode != "saturated":
            raise ValueError("solver-mode minimal covers need an explicit cap")
        cap = sum(u)
    n = monoid.atom_count
    covers: list[tuple[int, ...]] = []

    def is_cover(counts):
        return monoid.divides(u, monoid.element(counts))

    frontier: list[tuple[int, ...]] = [(0,) * n]
    for _ in range(cap):
        nxt: set[tuple[int, ...]] = set()
        for z in frontier:
            start = 0
            for i in range(n - 1, -1, -1):
                if z[i]:
                    start = i
                    break
            for j in range(start, n):
                z2 = z[:j] + (z[j] + 1,) + z[j + 1:]
                if z2 in nxt:
                    continue
                if is_cover(z2):
                    minimal = True
                    for i in range(n):
                        if z2[i]:
                            z3 = z2[:i] + (z2[i] - 1,) + z2[i + 1:]
                            if is_cover(z3):
                                minimal = False
                                break
                    if minimal and z2 not in covers:
                        covers.append(z2)
                else:
                    nxt.add(z2)
        frontier = sorted(nxt)
    return sorted(covers)


def omega(monoid: PresentedMonoid, atom_index: int, mode: str = "minimal-cover",
          budget: int | None = None):
    """Distance-from-prime measure of an atom.

    mode='minimal-cover': the maximum size of a componentwise-minimal atom
    multiset whose product the atom divides.  mode='definition-budget'
    replays the defining property over all atom products of size <= budget
    as an independent oracle (exact whenever budget >= coordinate sum of the
    atom).  mode='both' cross-checks them.
    """
    if mode == "both":
        a = omega(monoid, atom_index, "minimal-cover")
        b = omega(monoid, atom_index, "definition-budget", budget)
        if a != b:
            raise AssertionError(f"omega mismatch: minimal-cover={a} definition-budget={b}")
        return a
    if mode == "minimal-cover":
        return max(sum(z) for z in minimal_covers(monoid, atom_index))
    if mode != "definition-budget":
        raise ValueError(f"unknown omega mode {mode!r}")
    u = monoid.atoms[atom_index]
    if budget is None:
        budget = sum(u)
    n = monoid.atom_count
    worst = 0

    def min_subcover(z):
        best = sum(z)

        def rec(i, current, size):
            nonlocal best
            if monoid.divides(u, monoid.element(current)):
                best = min(best, size)
                return
            if i == n:
                return
            for c in range(0, z[i] + 1):
                if size + c >= best:
                    break
                rec(i + 1, current[:i] + (c,) + current[i + 1:], size + c)

        rec(0, (0,) * n, 0)
        return best

    for size in range(1, budget + 1):
        for combo in combinations_with_replacement(range(n), size):
            z = [0] * n
            for i in combo:
                z[i] += 1
            z = tuple(z)
            if monoid.divides(u, monoid.element(z)):
                worst = max(worst, min_subcover(z))
    return worst


def is_prime(monoid: PresentedMonoid, atom_index: int) -> bool:
    return omega(monoid, atom_index, "minimal-cover") == 1


def tau(monoid: PresentedMonoid, atom_index: int) -> int:
    """Largest minimal factorization length of (product of a minimal cover) / atom."""
    u = monoid.atoms[atom_index]
    best = 0
    for z in minimal_covers(monoid, atom_index):
        quotient = tuple(x - y for x, y in zip(monoid.element(z), u))
        ml = min_length(monoid, quotient)
        if ml is None:
            raise AssertionError("cover quotient left the monoid")
        best = max(best, ml)
    return best


def tame_degree(monoid: PresentedMonoid, atom_index: int) -> int:
    """max(omega, tau + 1) for a non-prime atom; 0 for a prime one."""
    w = omega(monoid, atom_index, "minimal-cover")
    if w <= 1:
        return 0
    return max(w, tau(monoid, atom_index) + 1)


def elements_up_to(monoid: PresentedMonoid, level: int) -> set[tuple[int, ...]]:
    """Distinct sums of at most ``level`` atoms (the identity excluded)."""
    out: set[tuple[int, ...]] = set()
    layer = {(0,) * monoid.ambient_dim}
    for _ in range(level):
        layer = {tuple(x + y for x, y in zip(e, a))
                 for e in layer for a in monoid.atoms}
        out |= layer
    return out


def half_factorial_probe(monoid: PresentedMonoid, level: int = 4):
    """Check |L(x)| = 1 for every sum of at most ``level`` atoms.

    Returns (verdict, witness): witness is an element with at least two
    factorization lengths when the verdict is False.
    """
    for x in sorted(elements_up_to(monoid, level)):
        if len(set_of_lengths(monoid, x)) > 1:
            return False, x
    return True, None
