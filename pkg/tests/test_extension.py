from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coverext.cosets import Presentation
from coverext.errors import CapExceeded, SurjectivityError
from coverext.extension import (
    Inclusion,
    abelianized_surjective,
    lift_is_closed,
    maximality_check,
    two_sheet_unique,
    weak_extend,
)
from coverext.perms import Perm
from coverext.reps import PermRep
from coverext.words import format_word, parse_word

from oracles import random_transitive_images


def example3_input():
    rho0 = PermRep(
        3,
        {"alpha1": Perm.from_images([0, 2, 1]), "alpha2": Perm.from_images([1, 0, 2])},
    )
    inc = Inclusion(
        ("alpha1", "alpha2"),
        {"alpha1": parse_word("gamma"), "alpha2": parse_word("gamma^-1")},
        Presentation.free(["gamma"]),
    )
    return rho0, inc


def two_sheet_input():
    flip = Perm.from_images([1, 0])
    rho0 = PermRep(2, {"alpha1": flip, "alpha2": flip})
    inc = Inclusion(
        ("alpha1", "alpha2"),
        {"alpha1": parse_word("gamma"), "alpha2": parse_word("gamma^-1")},
        Presentation.free(["gamma"]),
    )
    return rho0, inc


def test_three_sheet_cover_collapses_to_one():
    rho0, inc = example3_input()
    res = weak_extend(rho0, inc)
    assert res.b0 == 3 and res.b1 == 1
    assert not res.strong
    assert res.fiber_map == (0, 0, 0)
    assert res.abelianization_surjective is True
    assert [format_word(w) for w in res.stabilizer.transversal] == ["", "alpha2", "alpha2 alpha1"]
    assert [format_word(w) for w in res.stabilizer.generators] == [
        "alpha1",
        "alpha2^2",
        "alpha2 alpha1^2 alpha2^-1",
        "alpha2 alpha1 alpha2 alpha1^-1 alpha2^-1",
    ]
    assert res.path_classes_equivalent(parse_word(""), parse_word("gamma"))


def test_two_sheet_cover_extends_strongly():
    rho0, inc = two_sheet_input()
    res = weak_extend(rho0, inc)
    assert res.b0 == res.b1 == 2
    assert res.strong
    assert res.fiber_map == (0, 1)
    assert res.sheet_of_path(parse_word("")) == 0
    assert res.sheet_of_path(parse_word("gamma")) == 1
    assert not res.path_classes_equivalent(parse_word(""), parse_word("gamma"))
    assert res.path_classes_equivalent(parse_word("gamma^2"), parse_word(""))
    assert res.rho1.images["gamma"] == Perm.from_images([1, 0])


def test_alphabet_and_transitivity_guards():
    rho0, inc = two_sheet_input()
    bad = PermRep(2, {"alpha1": Perm.from_images([1, 0])})
    with pytest.raises(ValueError):
        weak_extend(bad, inc)
    intransitive = PermRep(
        2, {"alpha1": Perm.identity(2), "alpha2": Perm.identity(2)}
    )
    with pytest.raises(ValueError):
        weak_extend(intransitive, inc)


def test_abelianization_check():
    _, inc = two_sheet_input()
    assert abelianized_surjective(inc)
    rho0 = PermRep(
        2,
        {"alpha1": Perm.from_images([1, 0]), "alpha2": Perm.from_images([1, 0])},
    )
    klein = Presentation(
        ("gamma", "delta"),
        (
            parse_word("gamma^2"),
            parse_word("delta^2"),
            parse_word("gamma delta gamma^-1 delta^-1"),
        ),
    )
    partial = Inclusion(
        ("alpha1", "alpha2"),
        {"alpha1": parse_word("gamma"), "alpha2": parse_word("gamma")},
        klein,
    )
    assert not abelianized_surjective(partial)
    with pytest.raises(SurjectivityError):
        weak_extend(rho0, partial, surjectivity_assumed=True)
    # without the assumption, enumeration still runs and the fiber map
    # genuinely misses the sheets over the unreached generator
    with pytest.raises(SurjectivityError, match="misses"):
        weak_extend(rho0, partial, surjectivity_assumed=False)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_identity_inclusion_reproduces_cover(data):
    degree = data.draw(st.integers(min_value=1, max_value=6))
    k = data.draw(st.integers(min_value=1, max_value=3))
    seed = data.draw(st.integers(min_value=0, max_value=10_000))
    rng = np.random.default_rng(seed)
    images = random_transitive_images(rng, degree, k)
    names = tuple(f"g{i}" for i in range(k))
    rho0 = PermRep(degree, {n: Perm.from_images(t) for n, t in zip(names, images)})
    inc = Inclusion(
        names,
        {n: parse_word(n) for n in names},
        Presentation.free(names),
    )
    res = weak_extend(rho0, inc)
    assert res.b1 == res.b0 == degree
    assert res.strong
    assert sorted(res.fiber_map) == list(range(degree))
    # extended action is the original one relabelled by the fiber map
    for n in names:
        for s in range(degree):
            assert res.fiber_map[rho0.images[n](s)] == res.rho1.images[n](res.fiber_map[s])


def test_two_sheet_uniqueness_range():
    assert all(two_sheet_unique(k) for k in range(1, 9))
    with pytest.raises(ValueError):
        two_sheet_unique(0)


def test_lift_closure():
    rho0, _ = two_sheet_input()
    assert not lift_is_closed(rho0, parse_word("alpha1"))
    assert lift_is_closed(rho0, parse_word("alpha1^2"))
    assert lift_is_closed(rho0, parse_word("alpha1 alpha2^-1"))


def test_maximality_verdicts():
    rho0, inc = two_sheet_input()
    res = weak_extend(rho0, inc)

    same = maximality_check(res, res.rho1)
    assert same.is_extension and same.equivalent
    assert same.conjugator is not None

    trivial = maximality_check(res, PermRep(1, {"gamma": Perm.identity(1)}))
    assert trivial.is_extension and not trivial.equivalent
    assert trivial.quotient_map == (0, 0)

    bigger = maximality_check(res, PermRep(3, {"gamma": Perm.from_cycles(3, [(0, 1, 2)])}))
    assert not bigger.is_extension and not bigger.degree_ok

    with pytest.raises(CapExceeded):
        maximality_check(res, PermRep(9, {"gamma": Perm.identity(9)}), cap_degree=8)

    with pytest.raises(ValueError):
        maximality_check(res, PermRep(2, {"wrong": Perm.identity(2)}))


def test_maximality_respects_relators():
    rho0 = PermRep(2, {"alpha1": Perm.from_images([1, 0]), "alpha2": Perm.from_images([1, 0])})
    target = Presentation(("gamma",), (parse_word("gamma^2"),))
    inc = Inclusion(
        ("alpha1", "alpha2"),
        {"alpha1": parse_word("gamma"), "alpha2": parse_word("gamma^-1")},
        target,
    )
    res = weak_extend(rho0, inc)
    assert res.b1 == 2
    relator_violator = PermRep(3, {"gamma": Perm.from_cycles(3, [(0, 1, 2)])})
    assert not maximality_check(res, relator_violator).is_extension
    # identity satisfies gamma^2, but an equivariant image of the transitive
    # coset action would be constant, hence never onto two sheets
    constant_image = PermRep(2, {"gamma": Perm.identity(2)})
    assert not maximality_check(res, constant_image).is_extension
