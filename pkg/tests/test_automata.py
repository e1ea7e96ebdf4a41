import json
from itertools import product

import pytest

from ratbase.automata import (
    Dfa,
    all_words_dfa,
    complement,
    contains,
    dfa_product,
    equivalent,
    export_dfa,
    finite_language_dfa,
    is_empty,
    min_length_dfa,
    prefix_irs_test,
    trim,
)
from ratbase.blip import prefix_set, prime_length_language
from ratbase.errors import AlphabetMismatch


def ends_with_one() -> Dfa:
    delta = {(s, a): a for s in (0, 1) for a in (0, 1)}
    return Dfa((0, 1), 2, 0, delta, frozenset({1}))


def test_dfa_validation():
    with pytest.raises(ValueError):
        Dfa((0,), 2, 0, {(0, 0): 0}, frozenset())
    with pytest.raises(ValueError):
        Dfa((0,), 1, 1, {(0, 0): 0}, frozenset())


def test_boolean_operations_against_brute_force():
    a = ends_with_one()
    b = min_length_dfa(2, 2)
    words = [w for k in range(6) for w in product(range(2), repeat=k)]
    for mode, op in (("intersect", lambda x, y: x and y), ("union", lambda x, y: x or y),
                     ("difference", lambda x, y: x and not y)):
        c = dfa_product(a, b, mode)
        for w in words:
            assert c.accepts(w) == op(a.accepts(w), b.accepts(w))
    for w in words:
        assert complement(a).accepts(w) != a.accepts(w)


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        dfa_product(all_words_dfa(2), all_words_dfa(3))


def test_emptiness_and_containment():
    a = ends_with_one()
    assert not is_empty(a)
    assert is_empty(dfa_product(a, complement(a)))
    assert contains(all_words_dfa(2), a)
    assert not contains(a, all_words_dfa(2))
    assert equivalent(a, complement(complement(a)))


def test_finite_language_dfa():
    words = {(1,), (1, 0), (0, 1, 1)}
    a = finite_language_dfa(words, 2)
    assert a.words(4) == words
    useful, _ = trim(a)
    assert ("dead",) not in useful


def test_irs_test_on_finite_and_infinite():
    finite = finite_language_dfa(prefix_set([(1, 0, 1)]), 2)
    assert prefix_irs_test(finite)
    assert not prefix_irs_test(ends_with_one())


def test_prime_lengths_have_bounded_left_iteration_in_samples():
    # an infinite non-rational language whose finite truncation is IRS
    lang = prime_length_language(30)
    assert {len(w) for w in lang} == {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}
    assert prefix_irs_test(finite_language_dfa([w.digits for w in lang], 1))
    # a* itself contains the infinite rational subset a*
    assert not prefix_irs_test(all_words_dfa(1))


def test_export_dfa():
    a = ends_with_one()
    data = json.loads(export_dfa(a, "json"))
    assert data["initial"] == 0 and len(data["edges"]) == 4
    dot = export_dfa(a, "dot", labels={1: "one"})
    assert 'label="one"' in dot and "doublecircle" in dot
