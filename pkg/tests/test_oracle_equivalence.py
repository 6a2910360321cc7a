"""bautq against the dense brute-force oracle in tests/oracle.py."""
from hypothesis import given, settings

import oracle
from bautq.cohomology import cdga_cohomology
from bautq.fibration import complexes
from oracle_compare import compare_all
from strategies import relative_models, sullivan_models


def test_whole_corpus_matches_oracle(ws):
    assert compare_all(ws) == []
    assert compare_all.checked > 300


def to_oracle(m):
    names = m.alg.names
    gens = list(zip(names, m.alg.degrees))

    def conv(x):
        return {tuple(n for n, e in zip(names, mono) for _ in range(e)): c for mono, c in x.terms.items()}

    return oracle.OModel(gens, {names[i]: conv(v) for i, v in m.diff.items()})


@settings(max_examples=100, deadline=None)
@given(relative_models())
def test_random_relative_models_match_oracle(rm):
    om = to_oracle(rm.total)
    fc = complexes(rm)
    fib = [rm.total.alg.names[i] for i in rm.fiber_indices]
    for n in range(1, fc.total.max_degree + 1):
        assert fc.total.homology_dim(n) == oracle.der_homology_dim(om, n)
        assert fc.fiber.homology_dim(n) == oracle.der_homology_dim(om, n, fib)


@settings(max_examples=100, deadline=None)
@given(sullivan_models(max_gens=3, max_degree=6))
def test_random_cohomology_matches_oracle(m):
    om = to_oracle(m)
    table = cdga_cohomology(m, 10)
    assert table.dims_list() == [oracle.cohomology_dim(om, k) for k in range(11)]
