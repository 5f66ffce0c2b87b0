import pytest

from zsl.atoms import enumerate_atoms
from zsl.ground import GroundSet, Sequence
from zsl.invariants import (
    Factorization,
    PresentedMonoid,
    block_monoid,
    catenary_element,
    delta_set,
    distance,
    exists_length,
    factorizations,
    free_monoid,
    half_factorial_probe,
    is_prime,
    max_length,
    min_length,
    minimal_covers,
    omega,
    set_of_lengths,
    tame_degree,
    tau,
    union_of_lengths,
)

PM2 = GroundSet.from_elements(2, [(-1, -1), (-1, 0), (0, -1), (0, 1), (1, 0), (1, 1)])
PM2_ATOMS = enumerate_atoms(PM2)
B2 = block_monoid(PM2_ATOMS)


def vec(pairs):
    return Sequence.from_terms(PM2, pairs).mult


def atom_index(monoid, target):
    return monoid.atoms.index(tuple(target))


TRIPLE = vec([((1, 0), 1), ((0, 1), 1), ((-1, -1), 1)])
TRIPLE_NEG = vec([((-1, 0), 1), ((0, -1), 1), ((1, 1), 1)])


def test_monoid_validation():
    with pytest.raises(ValueError):
        PresentedMonoid(2, [(0, 0)])
    with pytest.raises(ValueError):
        PresentedMonoid(2, [(1, 0), (1, 1)])  # comparable atoms
    with pytest.raises(ValueError):
        PresentedMonoid(2, [(1,)])


def test_single_atom_unique_factorization():
    z = factorizations(B2, TRIPLE)
    assert len(z) == 1 and z[0].length == 1


def test_factorizations_of_identity():
    z = factorizations(B2, (0,) * 6)
    assert len(z) == 1 and z[0].length == 0


def test_factorizations_empty_outside_monoid():
    assert factorizations(B2, vec([((1, 0), 1)])) == []


def test_lengths_of_atom_times_negation():
    x = tuple(a + b for a, b in zip(TRIPLE, TRIPLE_NEG))
    assert set_of_lengths(B2, x) == (2, 3)
    assert delta_set(set_of_lengths(B2, x)) == {1}


def test_delta_set_singleton():
    assert delta_set((4,)) == set()
    assert delta_set((2, 5)) == {3}


def test_distance_identical_zero():
    z = factorizations(B2, TRIPLE)[0]
    assert distance(z, z) == 0


def test_distance_disjoint():
    a = Factorization((2, 0, 0))
    b = Factorization((0, 1, 4))
    assert distance(a, b) == 5


def test_distance_one_atom_swap():
    a = Factorization((1, 1, 0))
    b = Factorization((1, 0, 1))
    assert distance(a, b) == 1


def test_catenary_unique_factorization_zero():
    assert catenary_element(B2, TRIPLE) == 0


def test_catenary_pair_product():
    x = tuple(a + b for a, b in zip(TRIPLE, TRIPLE_NEG))
    # two factorizations of lengths 2 and 3 sharing nothing: distance 3
    assert catenary_element(B2, x) == 3


def test_catenary_outside_monoid_raises():
    with pytest.raises(ValueError):
        catenary_element(B2, vec([((1, 1), 1)]))


def test_union_k1_trivial():
    u = union_of_lengths(B2, 1)
    assert u.values == frozenset({1}) and u.rho == u.lam == 1


def test_union_k2_interval():
    u = union_of_lengths(B2, 2)
    assert u.exhaustive
    assert sorted(u.values) == [2, 3]


def test_union_rho4_r2():
    u = union_of_lengths(B2, 4)
    assert u.rho == 6
    assert u.lam == 3


def test_union_extremes_matches_exhaustive():
    for k in (2, 3, 4):
        full = union_of_lengths(B2, k, "exhaustive")
        ext = union_of_lengths(B2, k, "extremes")
        assert (full.rho, full.lam) == (ext.rho, ext.lam)


def test_exists_length_banding():
    x = tuple(a + b for a, b in zip(TRIPLE, TRIPLE_NEG))
    assert exists_length(B2, x, 2)
    assert exists_length(B2, x, 3)
    assert not exists_length(B2, x, 4)


def test_min_max_length():
    x = tuple(a + b for a, b in zip(TRIPLE, TRIPLE_NEG))
    assert min_length(B2, x) == 2
    assert max_length(B2, x) == 3
    assert min_length(B2, vec([((1, 0), 1)])) is None


def test_free_monoid_atoms_prime():
    f = free_monoid(3)
    for i in range(3):
        assert is_prime(f, i)
        assert omega(f, i, "both") == 1
        assert tame_degree(f, i) == 0


def test_omega_triple_atom():
    i = atom_index(B2, TRIPLE)
    assert omega(B2, i, "minimal-cover") == 3
    assert omega(B2, i, "both", budget=6) == 3


def test_omega_pair_atom():
    pair = vec([((1, 0), 1), ((-1, 0), 1)])
    i = atom_index(B2, pair)
    assert omega(B2, i, "both", budget=6) == 2


def test_minimal_covers_contain_self():
    i = atom_index(B2, TRIPLE)
    covers = minimal_covers(B2, i)
    self_cover = tuple(int(j == i) for j in range(B2.atom_count))
    assert self_cover in covers
    assert max(sum(z) for z in covers) == 3


def test_tau_and_tame_r2():
    # every atom of the rank-2 signed hypercube monoid is non-prime and the
    # largest tame degree equals the largest atom length
    tvals = []
    for i in range(B2.atom_count):
        w = omega(B2, i, "minimal-cover")
        t = tau(B2, i)
        assert not is_prime(B2, i)
        tvals.append(tame_degree(B2, i))
        assert tvals[-1] == max(w, t + 1)
    assert max(tvals) == 3


def test_tame_degree_of_prime_is_zero():
    f = free_monoid(2)
    assert tame_degree(f, 0) == 0


def test_half_factorial_free_monoid():
    ok, witness = half_factorial_probe(free_monoid(3), 4)
    assert ok and witness is None


def test_half_factorial_fails_for_block_monoid():
    ok, witness = half_factorial_probe(B2, 2)
    assert not ok
    assert set_of_lengths(B2, witness) == (2, 3)


def test_catenary_bounded_by_davenport_on_samples():
    # every sampled element: distances, catenary and length sets behave
    from zsl.invariants import elements_up_to

    d = 3
    for x in sorted(elements_up_to(B2, 3)):
        zs = factorizations(B2, x)
        assert zs
        c = catenary_element(B2, x)
        assert c <= d
        if c == 0:
            assert len(zs) == 1
        lengths = set_of_lengths(B2, x)
        gaps = delta_set(lengths)
        if gaps:
            assert 2 + max(gaps) <= c


def test_omega_modes_agree_on_all_r2_atoms():
    for i in range(B2.atom_count):
        u = B2.atoms[i]
        assert omega(B2, i, "minimal-cover") == omega(B2, i, "definition-budget",
                                                      budget=sum(u))


def tau_definition_replay(monoid, atom_index, budget):
    """Independent oracle for tau: scan every atom multiset up to the budget,
    keep those that the atom divides but no single removal of which it still
    divides, and take the largest minimal factorization length of the
    quotient."""
    from itertools import combinations_with_replacement

    u = monoid.atoms[atom_index]
    best = 0
    for size in range(1, budget + 1):
        for combo in combinations_with_replacement(range(monoid.atom_count), size):
            z = [0] * monoid.atom_count
            for i in combo:
                z[i] += 1
            b = monoid.element(z)
            if not monoid.divides(u, b):
                continue
            qualifying = True
            for i in set(combo):
                z2 = list(z)
                z2[i] -= 1
                if monoid.divides(u, monoid.element(z2)):
                    qualifying = False
                    break
            if not qualifying:
                continue
            quotient = tuple(x - y for x, y in zip(b, u))
            best = max(best, min_length(monoid, quotient))
    return best


def test_tau_matches_definition_replay():
    # the minimal-bundle reduction inside tau() is exact; replaying the raw
    # definition over all bounded bundles must give the same value
    for i in range(B2.atom_count):
        budget = sum(B2.atoms[i])
        assert tau(B2, i) == tau_definition_replay(B2, i, budget)
    f = free_monoid(2)
    for i in range(2):
        assert tau(f, i) == tau_definition_replay(f, i, 2) == 0


def test_rho5_rank3_independent_route():
    # the top of the union through 5 at rank 3: scan a deterministic slice of
    # the five-atom sums big enough to carry a 12-length factorization and
    # confirm the maximum length is 11 by the descending max-length scan (an
    # independent route from the exists-length search used by the extremes
    # strategy, which sweeps all candidates)
    from zsl.atoms import enumerate_atoms as enum
    from zsl.constructions import hypercube_pm
    from zsl.invariants import _sums_with_min_total, block_monoid, max_length

    m3 = block_monoid(enum(hypercube_pm(3)))
    candidates = sorted(_sums_with_min_total(m3, 5, 24))
    assert len(candidates) > 5000
    sample = candidates[::17]
    worst = max(max_length(m3, s) for s in sample)
    assert worst == 11


def test_union_k4_interval_rank3_from_witnesses():
    # the union through 4 at rank 3 is the full interval [2, 10]: the top half
    # comes from concatenating two 2-atom witnesses, the bottom from explicit
    # elements with both a 4-length and a short factorization
    from zsl.atoms import enumerate_atoms as enum
    from zsl.constructions import hypercube_pm

    m3 = __import__("zsl.invariants", fromlist=["block_monoid"]).block_monoid(
        enum(hypercube_pm(3)))
    ext = union_of_lengths(m3, 4, "extremes")
    assert ext.rho == 10 and ext.lam == 2
    # witnesses: for each atom length 2..5 find a two-atom product whose
    # lengths contain both 2 and that length ((-U)U does the job)
    samples = {}
    for i in range(m3.atom_count):
        u = m3.atoms[i]
        length = sum(u)
        if length in samples:
            continue
        # find the negated atom by matching the reversed support pattern
        for j in range(m3.atom_count):
            x = tuple(a + b for a, b in zip(u, m3.atoms[j]))
            lengths = set_of_lengths(m3, x)
            if 2 in lengths and length in lengths:
                samples[length] = x
                break
    assert set(samples) == {2, 3, 4, 5}
    found = set()
    for x in (2, 3, 4, 5):
        for y in (2, 3, 4, 5):
            ab = tuple(p + q for p, q in zip(samples[x], samples[y]))
            lengths = set_of_lengths(m3, ab)
            assert 4 in lengths and x + y in lengths
            found.add(x + y)
    assert found == set(range(4, 11))
    # 2 and 3 complete the interval: lambda_4 = 2 covers 2, and a triple atom
    # times a 5-atom pair element carries lengths {3, 4}
    triple = next(i for i in range(m3.atom_count) if sum(m3.atoms[i]) == 3)
    x = tuple(p + q for p, q in zip(samples[3], m3.atoms[triple]))
    lengths = set_of_lengths(m3, x)
    assert 3 in lengths and 4 in lengths
