from fractions import Fraction as Fr

import pytest

from oneplanar.charge import (
    RULE_SETS,
    SCHEME_A,
    SCHEME_B,
    PreconditionMinDegree,
    SchemeMismatch,
    apply_rule_set_a,
    apply_rule_set_b,
    apply_rule_set_c,
    b2a_amount,
    b2b_amount,
    b2cde_amount,
    c2c_amount,
    consistent_star_cases,
    degrees_fit_type,
    element_str,
    extract_witness,
    g_neighbors,
    initial_charges,
    negative_elements,
    opposite_neighbor,
    replay,
    rule_a_equal_split,
    total_charge,
)
from oneplanar.embedding import trace_faces


def test_charge_identities(corpus):
    for name, d in corpus.items():
        fs = trace_faces(d)
        assert total_charge(initial_charges(d, fs, SCHEME_A)) == Fr(-12), name
        assert total_charge(initial_charges(d, fs, SCHEME_B)) == Fr(-8), name


def test_initial_charges_tetrahedron(tetra):
    fs = trace_faces(tetra)
    a = initial_charges(tetra, fs, SCHEME_A)
    assert [a.charges[("v", v)] for v in tetra.vertex_ids] == [Fr(-3)] * 4
    assert [a.charges[("f", f.face_id)] for f in fs.faces] == [Fr(0)] * 4
    b = initial_charges(tetra, fs, SCHEME_B)
    assert set(b.charges.values()) == {Fr(-1)}


def test_negative_elements_initial_k6(k6):
    fs = trace_faces(k6)
    neg = negative_elements(initial_charges(k6, fs, SCHEME_A))
    assert [(element_str(e), c) for e, c in neg] == [
        ("v:a", Fr(-1)), ("v:b", Fr(-1)), ("v:c", Fr(-1)),
        ("v:d", Fr(-1)), ("v:e", Fr(-1)), ("v:f", Fr(-1)),
        ("v:x1", Fr(-2)), ("v:x2", Fr(-2)), ("v:x3", Fr(-2)),
    ]


def test_rule_set_a_table():
    # equal split at a k-vertex with 2*floor(k/2) incident false 3-faces
    expected = {7: Fr(1, 6), 8: Fr(1, 4), 9: Fr(3, 8), 10: Fr(2, 5), 11: Fr(1, 2)}
    for k, value in expected.items():
        assert rule_a_equal_split(k) == value


def test_rule_bc_clause_formulas():
    assert b2a_amount(8) == Fr(1, 6)
    assert b2b_amount(9) == Fr(5, 18) - Fr(1, 6)
    assert c2c_amount(10) == Fr(3, 5) - Fr(1, 2)
    assert c2c_amount(11) == Fr(7, 11) - Fr(1, 2)
    assert c2c_amount(12) == Fr(2, 3) - Fr(1, 2)
    assert b2cde_amount(24) == Fr(5, 12) - Fr(1, 4)
    # two channels of the pass-through clause at k = 24 give 1/3
    assert 2 * b2cde_amount(24) == Fr(1, 3)
    # boundary case: k = 8 pays exactly zero through crossings and big faces
    assert b2cde_amount(8) == 0


def test_rule_set_a_no_op_on_tetrahedron(tetra):
    fs = trace_faces(tetra)
    cs = initial_charges(tetra, fs, SCHEME_A)
    final, log = apply_rule_set_a(tetra, fs, cs)
    assert log == []
    assert final.charges == cs.charges


def test_rule_set_b_no_op_on_tetrahedron(tetra):
    fs = trace_faces(tetra)
    cs = initial_charges(tetra, fs, SCHEME_B)
    final, log = apply_rule_set_b(tetra, fs, cs)
    assert log == []
    neg = negative_elements(final)
    assert len(neg) == 8 and all(c == Fr(-1) for _, c in neg)


def test_scheme_mismatch(tetra):
    fs = trace_faces(tetra)
    a = initial_charges(tetra, fs, SCHEME_A)
    b = initial_charges(tetra, fs, SCHEME_B)
    with pytest.raises(SchemeMismatch):
        apply_rule_set_a(tetra, fs, b)
    with pytest.raises(SchemeMismatch):
        apply_rule_set_b(tetra, fs, a)
    with pytest.raises(SchemeMismatch):
        apply_rule_set_c(tetra, fs, a)


def test_conservation_and_replay(corpus):
    for name, d in corpus.items():
        fs = trace_faces(d)
        for rules, (scheme, apply_fn) in RULE_SETS.items():
            initial = initial_charges(d, fs, scheme)
            final, log = apply_fn(d, fs, initial)
            assert total_charge(final) == scheme.expected_total, (name, rules)
            # replay per rule stage: total is conserved after each stage
            state = initial
            for stage in sorted({t.rule for t in log}):
                state = replay(state, [t for t in log if t.rule == stage])
                assert total_charge(state) == scheme.expected_total, (name, rules, stage)
            assert state.charges == final.charges, (name, rules)


def test_all_clauses_fire_somewhere(corpus):
    fired = set()
    for d in corpus.values():
        fs = trace_faces(d)
        for rules, (scheme, apply_fn) in RULE_SETS.items():
            _, log = apply_fn(d, fs, initial_charges(d, fs, scheme))
            fired.update(t.rule for t in log)
    assert {"A1", "A2", "A3", "B1", "B2a", "B2b", "B2c", "B2d", "B2e",
            "C1", "C2a", "C2b", "C2c", "C2d"} <= fired


def test_transfer_log_is_canonically_sorted(corpus):
    d = corpus["k6_ab2"]
    fs = trace_faces(d)
    _, log = apply_rule_set_b(d, fs, initial_charges(d, fs, SCHEME_B))
    keys = [(t.rule, element_str(t.src), element_str(t.dst), t.site) for t in log]
    assert len(log) > 0
    rules = [t.rule for t in log]
    assert rules == sorted(rules)
    assert keys == list(dict.fromkeys(keys))  # no duplicate transfer identity


def test_transfer_amounts_nonnegative(corpus):
    for name, d in corpus.items():
        fs = trace_faces(d)
        for rules, (scheme, apply_fn) in RULE_SETS.items():
            _, log = apply_fn(d, fs, initial_charges(d, fs, scheme))
            assert all(t.amount >= 0 for t in log), (name, rules)


def test_opposite_neighbor_k6(k6):
    for c in k6.crossing_vertices:
        rot = k6.rotation(c)
        for i, w in enumerate(rot):
            assert opposite_neighbor(k6, w, c) == rot[(i + 2) % 4]


def test_g_neighbors_match_smoothed_graph(corpus):
    from oneplanar.diagram import smooth

    for name, d in corpus.items():
        g = smooth(d)
        for v in d.true_vertices:
            assert sorted(g_neighbors(d, v)) == sorted(g.adjacency[v]), (name, v)


def test_degrees_fit_type():
    bounds = ((7, 7), (0, 8), (0, 8), (0, 10))
    assert degrees_fit_type([7, 8, 8, 10], bounds)
    assert degrees_fit_type([10, 7, 7, 8], bounds)
    assert degrees_fit_type([7, 7, 7, 7], bounds)
    assert not degrees_fit_type([8, 8, 8, 8], bounds)  # needs an exact 7
    assert not degrees_fit_type([7, 8, 8, 11], bounds)
    assert not degrees_fit_type([7, 8, 9, 9], bounds)
    assert not degrees_fit_type([7, 8, 8], bounds)


def test_consistent_star_cases():
    # both distinguished neighbors small, third corner below 12
    assert 1 in consistent_star_cases(11, [7, 8, 9, 9, 9])
    assert 1 not in consistent_star_cases(12, [7, 8, 12, 12, 12])
    # exactly one small: corner degree caps the other neighbor
    assert 2 in consistent_star_cases(7, [7, 11, 12, 12, 12])
    assert 2 not in consistent_star_cases(8, [7, 11, 11, 11, 11])
    assert 2 in consistent_star_cases(8, [7, 10, 11, 11, 11])
    assert 2 in consistent_star_cases(9, [8, 9, 12, 12, 12])
    # both at least 9: minimum must be exactly 9
    assert 3 in consistent_star_cases(7, [9, 10, 12, 12, 12])
    assert 3 not in consistent_star_cases(7, [10, 10, 12, 12, 12])
    assert 3 in consistent_star_cases(8, [9, 9, 12, 12, 12])
    assert 3 not in consistent_star_cases(8, [9, 10, 12, 12, 12])
    assert consistent_star_cases(12, [10, 10, 11, 11, 11]) == ()


def test_extract_witness_min_degree_precondition(k6):
    fs = trace_faces(k6)
    cs = initial_charges(k6, fs, SCHEME_B)
    final, _ = apply_rule_set_b(k6, fs, cs)
    element = negative_elements(final)[0][0]
    with pytest.raises(PreconditionMinDegree):
        extract_witness(k6, fs, final, element, "B")
