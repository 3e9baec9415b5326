from fractions import Fraction

from tracesim import Kind, StarMode, load_corpus, run_corpus, run_fixture


def by_name():
    return {fx.name: fx for fx in load_corpus()}


def test_corpus_has_the_bundled_fixtures():
    fixtures = load_corpus()
    assert len(fixtures) >= 4
    names = {fx.name for fx in fixtures}
    assert {"no-trace", "needs-transpose", "complex-transpose",
            "gl-positive", "orthogonal-positive"} <= names


def test_no_trace_fixture_digits():
    fx = by_name()["no-trace"]
    assert fx.x[0].entries == tuple(Fraction(v) for v in (1, 0, 0, 0, 2, 0, 0, 0, 2))
    assert fx.y[0].entries == tuple(Fraction(v) for v in (1, 0, 0, 0, 1, 0, 0, 0, 2))
    assert not fx.expected.gl_similar


def test_needs_transpose_fixture_digits():
    fx = by_name()["needs-transpose"]
    x = fx.x[0]
    assert x.at(0, 1) == 1 and x.at(2, 3) == 1
    assert sum(1 for e in x.entries if e != 0) == 2
    y = fx.y[0]
    assert y.at(0, 1) == 1 and sum(1 for e in y.entries if e != 0) == 1


def test_complex_transpose_fixture_digits():
    fx = by_name()["complex-transpose"]
    assert fx.x.field.kind is Kind.COMPLEX128
    assert fx.x.field.star_mode is StarMode.TRANSPOSE
    n1, n2 = fx.x[0], fx.y[0]
    # N1 is the outer square of (1, i, 0, 0)
    u = [1, 1j, 0, 0]
    for i in range(4):
        for j in range(4):
            assert n1.at(i, j) == u[i] * u[j]
    # N2 entries lie in {0, +-1, +-i} and the matrix squares to zero
    assert set(n2.entries) <= {0, 1, -1, 1j, -1j}
    assert (n2 * n2).maxabs() == 0.0
    assert (n1 * n1).maxabs() == 0.0
    assert n1.rank() == 1 and n2.rank() == 2


def test_expected_records_are_internally_consistent():
    for fx in load_corpus():
        if fx.expected.orth_similar:
            assert fx.expected.gl_similar
            assert all(fx.expected.fingerprint_equal_at.values())


def test_live_procedures_reproduce_every_fixture():
    for result in run_corpus():
        assert result.ok, "%s: %s" % (
            result.name,
            [(c.label, c.expected, c.got) for c in result.checks if not c.ok])


def test_run_fixture_reports_labels():
    fx = by_name()["no-trace"]
    res = run_fixture(fx)
    labels = {c.label for c in res.checks}
    assert "gl_similar" in labels and "orth_similar" in labels
    assert any(l.startswith("fingerprint_equal") for l in labels)
