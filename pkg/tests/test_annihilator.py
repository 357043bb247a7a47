"""Decision procedure for integer annihilators f*a = 0 and its witnesses."""

import random

import pytest

from abeltile import (
    AnnihilatorVerdict,
    CapacityError,
    CharacterVector,
    FinMap,
    GroupSpec,
    InputError,
    RationalMod1,
    decide_level_shift,
    decide_zero_annihilator,
    l1_norm,
    sum_roots_is_zero,
    unit_expansion,
    verify_annihilator,
    witness_periodic_annihilator,
)
from abeltile.qzlinear import HALF, ZERO

from _oracles import cyclic_annihilator_scan

Z = GroupSpec(1)
Z2 = GroupSpec(2)
Z_X_ZMOD2 = GroupSpec(1, (2,))

HARD_NO = FinMap(Z, {(-1,): 3, (0,): -2, (1,): 3})
DOMINO = FinMap.indicator(Z, [(0,), (1,)])
TRIPLE = FinMap.indicator(Z, [(0,), (1,), (2,)])


def r(n, d):
    return RationalMod1(n, d)


# ------------------------------------------------------------- the decider


def test_hard_instance_is_no():
    v = decide_zero_annihilator(Z, HARD_NO)
    assert v.answer == "NO"
    assert v.witness_character is None
    assert v.witness_map is None
    assert not v.is_yes


def test_domino_yes_with_period_two_witness():
    v = decide_zero_annihilator(Z, DOMINO)
    assert v.is_yes
    assert v.witness_character.order == 2
    assert v.witness_character.etas == (HALF,)
    assert v.witness_map.period == 2
    assert v.witness_map.values == (1, -1)
    assert verify_annihilator(DOMINO, v.witness_map)


def test_triple_yes_with_period_three_witness():
    v = decide_zero_annihilator(Z, TRIPLE)
    assert v.is_yes
    assert v.witness_character.order == 3
    assert v.witness_map.values == (1, 0, -1)


@pytest.mark.parametrize("c", [2, 3, -2])
def test_scaled_delta_is_no(c):
    # a single weighted point never admits an annihilator
    v = decide_zero_annihilator(Z, FinMap.delta(Z, (0,), c))
    assert v.answer == "NO"


def test_full_cyclic_group_is_yes():
    # indicator of all of Z/2: any nontrivial character sums it to zero
    g = GroupSpec(0, (2,))
    v = decide_zero_annihilator(g, FinMap.indicator(g, [(0,), (1,)]))
    assert v.is_yes
    assert v.witness_map.value((0,)) == 1


def test_decider_input_errors():
    with pytest.raises(InputError):
        decide_zero_annihilator(Z, FinMap.zero(Z))
    with pytest.raises(InputError):
        decide_zero_annihilator(Z2, DOMINO)


def test_decider_capacity_error():
    with pytest.raises(CapacityError):
        decide_zero_annihilator(Z, HARD_NO, cap=4)  # l1 = 8 > 4


def test_decider_is_deterministic():
    a = decide_zero_annihilator(Z, TRIPLE)
    b = decide_zero_annihilator(Z, TRIPLE)
    assert a.witness_character.etas == b.witness_character.etas
    assert a.witness_map.values == b.witness_map.values
    assert a.partition_trace == b.partition_trace


# -------------------------------------------------------- CharacterVector


def test_character_validation():
    chi = CharacterVector(Z_X_ZMOD2, (r(1, 3), HALF))
    assert chi.order == 6
    with pytest.raises(InputError):
        CharacterVector(Z_X_ZMOD2, (ZERO, r(1, 3)))  # 2 * 1/3 != 0
    with pytest.raises(InputError):
        CharacterVector(Z, (ZERO, ZERO))  # arity


def test_character_phase():
    chi = CharacterVector(Z, (r(1, 3),))
    assert chi.phase((1,)) == r(1, 3)
    assert chi.phase((3,)) == ZERO
    assert chi.phase((-1,)) == r(2, 3)
    mixed = CharacterVector(Z_X_ZMOD2, (r(1, 4), HALF))
    # torsion coordinate canonicalizes before evaluating
    assert mixed.phase((0, 3)) == mixed.phase((0, 1)) == HALF
    assert mixed.phase((1, 1)) == r(3, 4)


def test_fourier_phases_track_unit_expansion():
    chi = CharacterVector(Z, (HALF,))
    phases = chi.fourier_phases(DOMINO)
    assert phases == [ZERO, HALF]
    assert sum_roots_is_zero(phases)


# ----------------------------------------------------------------- witness


def test_witness_examples():
    triv = CharacterVector(Z, (ZERO,))
    assert witness_periodic_annihilator(Z, triv).values == (1,)
    half = CharacterVector(Z, (HALF,))
    assert witness_periodic_annihilator(Z, half).values == (1, -1)
    third = CharacterVector(Z, (r(1, 3),))
    assert witness_periodic_annihilator(Z, third).values == (1, 0, -1)
    with pytest.raises(InputError):
        witness_periodic_annihilator(Z2, half)


def test_verify_annihilator_basics():
    from abeltile import PeriodicMap

    good = PeriodicMap(Z, 2, [1, -1])
    assert verify_annihilator(DOMINO, good)
    assert not verify_annihilator(DOMINO, PeriodicMap.constant(Z, 1))
    assert not verify_annihilator(DOMINO, PeriodicMap.constant(Z, 0))  # zero map


# ----------------------------------------------------------- level shifts


def test_level_shift_examples():
    assert decide_level_shift(Z, DOMINO).is_yes
    assert decide_level_shift(Z, HARD_NO).answer == "NO"
    assert decide_level_shift(Z, FinMap.delta(Z, (0,))).answer == "NO"
    with pytest.raises(InputError):
        decide_level_shift(Z, FinMap(Z, {(0,): 1, (1,): -1}))  # total mass 0
    with pytest.raises(InputError):
        decide_level_shift(Z2, DOMINO)


def test_zero_mass_f_has_annihilator_but_no_level_reduction():
    f = FinMap(Z, {(0,): 1, (1,): -1})
    # the constant function annihilates it, so the zero-annihilator question
    # is YES even though the level-shift reduction refuses the input
    v = decide_zero_annihilator(Z, f)
    assert v.is_yes
    assert v.witness_character.order == 1


# ------------------------------------------------------------- properties


def _random_finmap(rng, group, l1_cap=5):
    while True:
        n = rng.randint(1, 3)
        items = []
        for _ in range(n):
            coords = tuple(
                rng.randint(-3, 3) if i < group.free_rank else rng.randint(0, 3)
                for i in range(group.rank)
            )
            items.append((coords, rng.choice([-2, -1, 1, 2])))
        f = FinMap(group, items)
        if not f.is_zero and l1_norm(f) <= l1_cap:
            return f


@pytest.mark.parametrize("group", [Z, Z2, Z_X_ZMOD2], ids=["Z", "Z2", "ZxZ2"])
def test_yes_witnesses_always_verify(group):
    rng = random.Random(f"wit-{group.torsion}")
    yes_seen = 0
    for _ in range(25):
        f = _random_finmap(rng, group)
        v = decide_zero_annihilator(group, f)
        if not v.is_yes:
            continue
        yes_seen += 1
        assert verify_annihilator(f, v.witness_map)
        assert v.witness_map.value(group.identity()) == 1
        # the character really kills the transform, exactly
        assert sum_roots_is_zero(v.witness_character.fourier_phases(f))
    assert yes_seen >= 1  # the sample must exercise the YES path


def test_translation_invariance():
    rng = random.Random("shift")
    for _ in range(15):
        f = _random_finmap(rng, Z)
        h = (rng.randint(-4, 4),)
        assert (
            decide_zero_annihilator(Z, f).answer
            == decide_zero_annihilator(Z, f.shift(h)).answer
        )


def test_finite_group_matches_character_scan():
    rng = random.Random("scan")
    for _ in range(40):
        n = rng.randint(2, 10)
        g = GroupSpec(0, (n,))
        f = _random_finmap(rng, g)
        want = cyclic_annihilator_scan(n, f.entries)
        got = decide_zero_annihilator(g, f).is_yes
        assert got == want, (n, f.entries)


def test_partition_trace_coherence():
    for f in [DOMINO, TRIPLE, FinMap(Z, {(0,): 2, (1,): -1, (2,): -1})]:
        v = decide_zero_annihilator(Z, f)
        if not v.is_yes:
            continue
        terms = unit_expansion(f)
        chi = v.witness_character
        seen = []
        for bt in v.partition_trace:
            assert len(bt.term_indices) == len(bt.omega) >= 2
            assert bt.omega[0] == ZERO  # gauge: first position pinned
            assert sum_roots_is_zero(bt.omega)
            seen.extend(bt.term_indices)
            for idx, om in zip(bt.term_indices, bt.omega):
                x, eps = terms[idx]
                # block phase = transform phase shifted by the block offset
                assert eps - chi.phase(x) == om - bt.xi0
        assert sorted(seen) == list(range(len(terms)))


def test_verdict_dataclass_shape():
    v = AnnihilatorVerdict("NO")
    assert v.partition_trace is None and not v.is_yes
