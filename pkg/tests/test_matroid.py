from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import S
from perfectmat import bitset as bs
from perfectmat import families
from perfectmat.errors import (
    DuplicateBases,
    EmptyBases,
    ExchangeAxiomViolated,
    InvalidRank,
    MatroidAxiomError,
    NotABasis,
    UnequalCardinality,
    ZeroMatrix,
)
from perfectmat.linalg import RationalMatrix, bareiss_rank, parse_rational
from perfectmat.matroid import (
    Graph,
    RelabelMap,
    contract,
    delete,
    direct_sum,
    dual,
    from_bases,
    from_graph,
    from_matrix,
    restrict,
    uniform,
)

MATRICES = {
    "fig1": families.FIG1,
    "r5n8": families.R5N8,
    "interesting10": families.INTERESTING10_N,
    "r2n8": families.R2N8_N,
    "delminor7": families.DELMINOR7,
}


# --- bitsets and exact linear algebra ------------------------------------


def test_mask_roundtrip():
    assert bs.elements(bs.mask([3, 1, 5])) == (1, 3, 5)
    assert bs.mask(0b101) == 0b101
    with pytest.raises(ValueError):
        bs.mask([0])


def test_format_set():
    assert bs.format_set(S(1, 2, 5)) == "125"
    assert bs.format_set(S(4, 8, 10)) == "4,8,10"
    assert bs.format_set(S(1, 2), base=0) == "01"


def test_canonical_key_orders_by_size_then_lex():
    masks = [S(2, 3), S(1), S(1, 4), S(1, 2, 3)]
    assert [bs.elements(m) for m in sorted(masks, key=bs.canonical_key)] == [
        (1,), (1, 4), (2, 3), (1, 2, 3)
    ]


def test_submasks_count():
    assert len(list(bs.submasks(S(1, 3, 4)))) == 8


def test_parse_rational():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational("7") == 7
    with pytest.raises(ValueError):
        parse_rational("0.5")
    with pytest.raises(TypeError):
        parse_rational(0.5)


def test_integer_columns_scale_exactly():
    m = RationalMatrix.from_rows([["1/2", "1"], ["1/3", "2/5"]])
    assert [list(c) for c in m.integer_columns()] == [[3, 2], [5, 2]]


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4))
def test_bareiss_rank_matches_minors(rows):
    cols = [tuple(r[j] for r in rows) for j in range(3)]
    expected = max(
        (k for k in range(1, min(len(rows), 3) + 1)
         if any(oracles.columns_independent(rows, c) for c in combinations(range(3), k))),
        default=0,
    )
    assert bareiss_rank(cols) == expected


# --- constructors --------------------------------------------------------


@pytest.mark.parametrize("name", sorted(MATRICES))
def test_from_matrix_matches_determinant_oracle(name):
    rows = MATRICES[name]
    assert oracles.sets(from_matrix(rows).bases) == oracles.matrix_bases(rows)


def test_fig1_basics():
    m = from_matrix(families.FIG1)
    assert (m.n, m.rank, len(m.bases)) == (6, 3, 14)


def test_zero_rank_and_empty_matrix():
    assert from_matrix([[0, 0]]).bases == (0,)
    with pytest.raises(ZeroMatrix):
        from_matrix([[]])


def test_from_bases_validation():
    assert from_bases(3, [S(1, 2), S(1, 3), S(2, 3)]) == uniform(2, 3)
    with pytest.raises(EmptyBases):
        from_bases(2, [])
    with pytest.raises(UnequalCardinality):
        from_bases(3, [S(1), S(2, 3)])
    with pytest.raises(DuplicateBases):
        from_bases(2, [S(1), S(1)])
    with pytest.raises(ExchangeAxiomViolated):
        from_bases(4, [S(1, 2), S(3, 4)])
    with pytest.raises(ValueError):
        from_bases(2, [S(3)])


def test_axiom_errors_share_a_base():
    assert issubclass(ExchangeAxiomViolated, MatroidAxiomError)


def test_uniform():
    assert len(uniform(2, 4).bases) == 6
    assert uniform(0, 2).bases == (0,)
    with pytest.raises(InvalidRank):
        uniform(3, 2)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_mr_graph_tree_count(r):
    g = families.mr_graph(r)
    assert len(from_graph(g).bases) == oracles.spanning_tree_count(g.vertices, g.edges)


def test_k4_cycle_matroid():
    m = from_graph(families.K4)
    assert len(m.bases) == 16 == oracles.spanning_tree_count(4, families.K4.edges)


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph(2, ((1, 3),))


def test_graph_loop_edge_is_a_loop():
    m = from_graph(Graph(2, ((1, 1), (1, 2))))
    assert m.loops == S(1)
    assert m.coloops == S(2)


# --- derived sets --------------------------------------------------------


@pytest.mark.parametrize("name", ["fig1", "delminor7", "r5n8"])
def test_circuits_match_brute_force(name):
    m = from_matrix(MATRICES[name])
    bases = oracles.sets(m.bases)
    assert oracles.sets(m.circuits) == oracles.circuits(m.n, bases)
    assert oracles.sets(m.cocircuits) == oracles.circuits(m.n, oracles.dual_bases(m.n, bases))


def test_circuits_are_canonical_and_incomparable(entry):
    cs = list(entry.matroid.circuits)
    assert cs == sorted(cs, key=bs.canonical_key)
    for a in cs:
        for b in cs:
            assert a == b or a & ~b


def test_every_dependent_set_contains_a_circuit(corpus):
    m = corpus["delminor7"].matroid
    indep = m.independent_sets
    for s in range(1 << m.n):
        if s not in indep:
            assert any(c & ~s == 0 for c in m.circuits)


def test_interesting10_circuits_as_printed(corpus):
    printed = ["1234", "125678", "1345678", "2345678"]
    expected = {frozenset(int(c) for c in p) for p in printed}
    expected |= {frozenset({1, 2, 5, 6, 9, 10}), frozenset({1, 3, 4, 5, 6, 9, 10}),
                 frozenset({2, 3, 4, 5, 6, 9, 10}), frozenset({7, 8, 9, 10})}
    assert oracles.sets(corpus["interesting10"].matroid.circuits) == expected


def test_loops_coloops_parallel():
    m = uniform(2, 4)
    assert (m.loops, m.coloops) == (0, 0)
    assert m.parallel_classes == (S(1), S(2), S(3), S(4))
    n = from_matrix(families.INTERESTING10_N)
    assert len(n.parallel_classes) == 6


def test_pivoting_equivalence(entry):
    m = entry.matroid
    if m.n > 10:
        pytest.skip("large")
    for b in m.bases:
        for bb in bs.iter_bits(b):
            x = bs.index_of(bb)
            for eb in bs.iter_bits(m.ground & ~b):
                e = bs.index_of(eb)
                swapped = (b & ~bb) | eb
                is_basis = m.is_basis(swapped)
                assert is_basis == bool(m.fundamental_circuit(b, e) & bb)
                assert is_basis == bool(m.fundamental_cocircuit(b, x) & eb)
                if is_basis:
                    assert m.fundamental_cocircuit(swapped, e) & bb


def test_fundamental_cocircuit_matches_oracle(corpus):
    m = corpus["fig1-natural"].matroid
    bases = oracles.sets(m.bases)
    for b in bases:
        for f in b:
            got = m.fundamental_cocircuit(oracles.to_mask(b), f)
            assert oracles.sets([got]) == {oracles.cocircuit_of(m.n, bases, b, f)}


def test_fundamental_circuit_requires_basis(corpus):
    m = corpus["fig1-natural"].matroid
    with pytest.raises(NotABasis):
        m.fundamental_circuit(S(3, 4, 6), 1)


def test_rank_and_closure():
    m = from_matrix(families.FIG1)
    # columns 2 and 4 coincide; column 6 is column 3 plus column 4
    assert m.rank_of(S(3, 4, 6)) == 2
    assert m.closure(S(3, 4)) == S(2, 3, 4, 6)
    assert m.rank_of(S(1, 2, 3)) == 3


# --- minors and duality --------------------------------------------------


def test_dual_involution(entry):
    assert dual(dual(entry.matroid)) == entry.matroid


def test_contract_is_dual_delete_dual(entry):
    m = entry.matroid
    for e in bs.elements(m.ground):
        c, rl = contract(m, bs.bit(e))
        d, rl2 = delete(dual(m), bs.bit(e))
        assert c == dual(d) and rl == rl2


def test_deletion_bases():
    m = from_matrix(families.FIG1)
    d, rl = delete(m, S(4))
    assert rl.new_to_old == (1, 2, 3, 5, 6)
    expected = {rl.forward(b) for b in m.bases if not b & S(4)}
    assert set(d.bases) == expected


def test_contraction_of_coloop_and_loop():
    m = from_graph(Graph(2, ((1, 1), (1, 2))))
    assert contract(m, S(2))[0] == delete(m, S(2))[0]
    assert contract(m, S(1))[0] == delete(m, S(1))[0]


def test_restrict_and_direct_sum():
    m, _ = restrict(from_matrix(families.INTERESTING10_N), S(1, 2, 3, 5))
    assert m == uniform(2, 4)
    s = direct_sum(uniform(1, 2), uniform(1, 1))
    assert s.coloops == S(3) and len(s.bases) == 2


def test_relabel_composition():
    a = RelabelMap.keeping(5, S(1, 2, 4, 5))
    b = RelabelMap.keeping(4, S(1, 3, 4))
    ab = a.then(b)
    assert ab.new_to_old == (1, 4, 5)
    assert ab.backward(S(2)) == S(4)


def test_pickle_roundtrip(corpus):
    import pickle

    m = corpus["r5n8"].matroid
    _ = m.circuits
    assert pickle.loads(pickle.dumps(m)) == m


small_matrix = st.lists(st.lists(st.integers(-2, 2), min_size=5, max_size=5), min_size=2, max_size=3)


@given(small_matrix)
def test_random_matrix_matroid_axioms(rows):
    m = from_matrix(rows)
    if not m.bases or m.rank == 0:
        return
    from perfectmat.matroid import check_exchange

    check_exchange(list(m.bases))
    check_exchange(list(dual(m).bases))
    for e in range(1, 6):
        check_exchange(list(delete(m, bs.bit(e))[0].bases))
        check_exchange(list(contract(m, bs.bit(e))[0].bases))
