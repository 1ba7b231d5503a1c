"""Acceptance criteria, one test per criterion.

Each test prints exactly one ``ACCEPTANCE <id> ... PASS|FAIL`` line (run
pytest with ``-s`` or read the captured output).  All numeric checks are
exact rational equalities; the two timed criteria pin wall-clock budgets.
"""

import io
import random
import time
from contextlib import contextmanager
from fractions import Fraction as Fr

import pytest

from oneplanar.charge import (
    RULE_SETS,
    SCHEME_A,
    SCHEME_B,
    PreconditionMinDegree,
    b2a_amount,
    b2b_amount,
    c2c_amount,
    initial_charges,
    replay,
    rule_a_equal_split,
    total_charge,
)
from oneplanar.cli import run
from oneplanar.construct import GlueSpec, fixture, glue
from oneplanar.diagram import SimpleGraph, parse, serialize, smooth, validate
from oneplanar.embedding import (
    FALSE_TRIANGLE,
    PreconditionNotTriangulated,
    classify,
    euler_check,
    false_triangle_parity,
    incident_faces,
    trace_faces,
)
from oneplanar.patterns import (
    DegreeInterval,
    TypedPattern,
    catalog,
    find_typed,
    oracle_find_typed,
)


@contextmanager
def criterion(label):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {label} FAIL")
        raise
    print(f"ACCEPTANCE {label} PASS")


def test_criterion_1_charge_identities(corpus):
    with criterion("1 charge-identities"):
        assert len(corpus) >= 4 + 5  # four bases, at least five glued variants
        start = time.monotonic()
        for name, d in corpus.items():
            fs = trace_faces(d)
            assert total_charge(initial_charges(d, fs, SCHEME_A)) == Fr(-12), name
            assert total_charge(initial_charges(d, fs, SCHEME_B)) == Fr(-8), name
        assert time.monotonic() - start < 1.0


def test_criterion_2_conservation(corpus):
    with criterion("2 conservation"):
        for name, d in corpus.items():
            fs = trace_faces(d)
            for rules, (scheme, apply_fn) in RULE_SETS.items():
                initial = initial_charges(d, fs, scheme)
                final, log = apply_fn(d, fs, initial)
                state = initial
                for stage in sorted({t.rule for t in log}):
                    state = replay(state, [t for t in log if t.rule == stage])
                    assert total_charge(state) == scheme.expected_total, (name, rules, stage)
                assert state.charges == final.charges, (name, rules)
                assert total_charge(final) == scheme.expected_total, (name, rules)


def test_criterion_3_rule_fractions():
    with criterion("3 rule-fractions"):
        assert [rule_a_equal_split(k) for k in range(7, 12)] == [
            Fr(1, 6), Fr(1, 4), Fr(3, 8), Fr(2, 5), Fr(1, 2),
        ]
        assert b2a_amount(8) == Fr(1, 6)
        assert b2b_amount(9) == Fr(5, 18) - Fr(1, 6)
        assert c2c_amount(10) == Fr(3, 5) - Fr(1, 2)
        assert c2c_amount(11) == Fr(7, 11) - Fr(1, 2)
        assert c2c_amount(12) == Fr(2, 3) - Fr(1, 2)
        assert c2c_amount(24) == Fr(5, 6) - Fr(1, 2)


def test_criterion_4_structural_invariants(corpus):
    with criterion("4 structural-invariants"):
        for name, d in corpus.items():
            fs = trace_faces(d)
            assert sum(f.degree for f in fs.faces) == 2 * d.num_edges, name
            assert euler_check(d, fs), name
            for f in fs.faces:
                if f.degree == 3:
                    assert sum(1 for v in f.corners if d.is_crossing(v)) <= 1, name
            for v in d.true_vertices:
                n_false = sum(
                    1
                    for fid in incident_faces(d, fs, v)
                    if classify(d, fs.faces[fid]) == FALSE_TRIANGLE
                )
                assert n_false <= 2 * (d.degree(v) // 2), (name, v)
                try:
                    assert false_triangle_parity(d, fs, v) % 2 == 0, (name, v)
                except PreconditionNotTriangulated:
                    pass


def _random_graph(n, p, rng):
    vs = tuple(f"v{i}" for i in range(n))
    edges = frozenset(
        frozenset((u, v))
        for i, u in enumerate(vs)
        for v in vs[i + 1:]
        if rng.random() < p
    )
    return SimpleGraph(vertices=vs, edges=edges)


def test_criterion_5_oracle_equivalence(corpus):
    with criterion("5 oracle-equivalence"):
        start = time.monotonic()
        pats = catalog()
        for name, d in corpus.items():
            g = smooth(d)
            if len(g.vertices) > 12:
                continue  # above the oracle's documented host cap
            for p in pats:
                assert find_typed(g, p) == oracle_find_typed(g, p), (name, p.name)
        rng = random.Random(20260823)
        for i in range(200):
            n = rng.randint(4, 10)
            g = _random_graph(n, rng.uniform(0.15, 0.7), rng)
            for p in pats:
                assert find_typed(g, p) == oracle_find_typed(g, p), (i, p.name)
        assert time.monotonic() - start < 30.0


def test_criterion_6_gluing():
    with criterion("6 gluing"):
        base = fixture("k6")
        for n in (1, 2, 4):
            out = glue(GlueSpec(base, "a", "b", 0, n))
            assert validate(out).ok, n
            assert out.degree("a") >= n
            g = smooth(out)
            keep = {v for v in g.vertices if v not in ("a", "b")}
            seen = set()
            for start_v in keep:
                if start_v in seen:
                    continue
                component = {start_v}
                frontier = [start_v]
                while frontier:
                    v = frontier.pop()
                    for u in g.adjacency[v]:
                        if u in keep and u not in component:
                            component.add(u)
                            frontier.append(u)
                seen |= component
                assert len(component) <= 4, (n, component)
        # n = 1 reproduces the base graph: same degree multiset and the
        # base occurs as a typed subgraph with exact degree pins
        out = glue(GlueSpec(base, "a", "b", 0, 1))
        g_base, g_out = smooth(base), smooth(out)
        assert sorted(g_base.degree(v) for v in g_base.vertices) == sorted(
            g_out.degree(v) for v in g_out.vertices
        )
        exact = TypedPattern(
            name="base_copy",
            vertices=tuple(g_base.vertices),
            edges=g_base.edges,
            bounds={
                v: DegreeInterval(g_base.degree(v), g_base.degree(v))
                for v in g_base.vertices
            },
        )
        assert g_out.num_edges == g_base.num_edges
        assert find_typed(g_out, exact, limit=1)


def test_criterion_7_conditional_theorem_suite(tmp_path, k6):
    # No bundled diagram has minimum true-degree 7, so the theorem suite is
    # exercised against its documented error path: the k6 fixture (minimum
    # degree 5) must be rejected as ineligible, not reported as failing.
    with criterion("7 conditional-theorems"):
        from oneplanar.patterns import check_guarantees

        with pytest.raises(PreconditionMinDegree, match="minimum true-degree is 5"):
            check_guarantees(k6)
        path = tmp_path / "k6.onepl"
        path.write_text(serialize(k6), encoding="utf-8")
        out, err = io.StringIO(), io.StringIO()
        code = run(["check-theorems", str(path)], stdout=out, stderr=err)
        assert code == 2
        assert "minimum true-degree is 5" in err.getvalue()
        assert out.getvalue() == ""


def test_criterion_8_round_trips_and_determinism(corpus, tmp_path):
    with criterion("8 round-trips-determinism"):
        for name, d in corpus.items():
            assert parse(serialize(d)) == d, name
        path = tmp_path / "k6_ab2.onepl"
        path.write_text(serialize(corpus["k6_ab2"]), encoding="utf-8")
        for argv in (
            ["validate", str(path)],
            ["faces", str(path)],
            ["smooth", str(path)],
            ["charge", "--scheme", "A", str(path)],
            ["discharge", "--rules", "C", "--log", str(path)],
            ["find", "--pattern", "paw_9max", str(path)],
            ["glue", "--w1", "a", "--w2", "b", "--face", "0", "-n", "2", str(path)],
        ):
            runs = []
            for _ in range(2):
                out, err = io.StringIO(), io.StringIO()
                code = run(argv, stdout=out, stderr=err)
                runs.append((code, out.getvalue(), err.getvalue()))
            assert runs[0] == runs[1], argv
            assert runs[0][0] == 0, argv
