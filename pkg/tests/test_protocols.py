from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import integrate_subcake, valuations
from symcut.errors import CapabilityError, ResourceLimitError
from symcut.fairness import (
    check_envy_free,
    check_proportional,
    check_query_bound,
    check_symmetric,
)
from symcut.instances import (
    all_lebesgue,
    concentrated_instance,
    even_paz_counterexample,
    generate,
    last_diminisher_counterexample,
)
from symcut.protocols import (
    Division,
    aristo_prop,
    cut_and_choose,
    even_paz,
    group_by_evaluation_vector,
    kuhn,
    last_diminisher,
    run_protocol,
    selfridge_conway,
    sym_prop,
    symmetric_envy_free,
)
from symcut.valuation import Subcake, Valuation

LEB = Valuation.lebesgue()
RIGHT_HEAVY = Valuation(((F(1, 2), F(1), F(2)),))


def iv(a, b):
    return Subcake.from_pairs([(a, b)])


def instances(n_min=2, n_max=4):
    return st.integers(n_min, n_max).flatmap(lambda n: st.lists(valuations(max_steps=3), min_size=n, max_size=n))


class TestCutAndChoose:
    def test_lebesgue(self):
        assert cut_and_choose(LEB, LEB).values == (F(1, 2), F(1, 2))

    def test_chooser_takes_the_heavy_half(self):
        d = cut_and_choose(LEB, RIGHT_HEAVY)
        assert d.pieces[1] == iv(F(1, 2), 1)
        assert d.values == (F(1, 2), F(1))

    @given(valuations())
    def test_equal_players_split_evenly(self, v):
        assert cut_and_choose(v, v).values == (F(1, 2), F(1, 2))


class TestLastDiminisher:
    def test_counterexample(self):
        d = last_diminisher(last_diminisher_counterexample())
        assert d.pieces == (iv(0, F(1, 3)), iv(F(1, 2), 1), iv(F(1, 3), F(1, 2)))
        assert d.values[:2] == (F(1, 3), F(1, 2))

    def test_lebesgue_in_input_order(self):
        d = last_diminisher(all_lebesgue(3))
        assert d.pieces == (iv(0, F(1, 3)), iv(F(1, 3), F(2, 3)), iv(F(2, 3), 1))

    def test_single_player(self):
        assert last_diminisher([LEB]).pieces == (Subcake.full(),)


class TestEvenPaz:
    def test_counterexample(self):
        d = even_paz(even_paz_counterexample())
        assert d.values[0] == F(1, 4) and d.values[3] == F(49, 100)

    def test_lebesgue(self):
        assert even_paz(all_lebesgue(4)).values == (F(1, 4),) * 4

    def test_two_players(self):
        # p1 marks 1/2, p2 marks 3/4: p1 (smaller mark) goes left, cut at p1's mark
        d = even_paz([LEB, RIGHT_HEAVY])
        assert d.pieces == (iv(0, F(1, 2)), iv(F(1, 2), 1))
        # swap: p2's mark is now first in input but still larger
        d = even_paz([RIGHT_HEAVY, LEB])
        assert d.pieces == (iv(F(1, 2), 1), iv(0, F(1, 2)))

    @given(instances(2, 5))
    def test_proportional(self, vs):
        assert check_proportional(even_paz(vs), vs)


class TestSelfridgeConway:
    def test_equal_players(self):
        d = selfridge_conway(LEB, LEB, LEB)
        assert d.values == (F(1, 3),) * 3
        assert d.ledger.cut_count == 2

    def test_concentrated_pair_triggers_trim(self):
        c = Valuation.uniform(F(2, 3), 1)
        d = selfridge_conway(LEB, c, c)
        assert d.ledger.cut_count > 2
        assert check_envy_free(d, [LEB, c, c])

    @given(instances(3, 3))
    def test_envy_free(self, vs):
        assert check_envy_free(selfridge_conway(*vs), vs)


class TestKuhnFamily:
    def test_kuhn_lebesgue(self):
        assert kuhn(all_lebesgue(3)).values == (F(1, 3),) * 3
        assert kuhn([LEB]).pieces == (Subcake.full(),)

    @given(instances(2, 5))
    def test_kuhn_proportional(self, vs):
        assert check_proportional(kuhn(vs), vs)

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_aristo_lebesgue_single_round(self, n):
        d = aristo_prop(all_lebesgue(n))
        assert d.values == (F(1, n),) * n and len(d.rounds) == 1

    def test_aristo_on_last_diminisher_instance(self):
        d = aristo_prop(last_diminisher_counterexample())
        assert d.values[0] == d.values[1]

    def test_symprop_lebesgue(self):
        d = sym_prop(all_lebesgue(3))
        assert d.values == (F(1, 3),) * 3 and d.rounds[0].n_allocations == 6

    def test_symprop_symmetric_n4(self):
        assert check_symmetric(sym_prop, generate(4, 3, seed=11))

    def test_symprop_concentrated_first_round(self):
        d = sym_prop(concentrated_instance(2))
        r = d.rounds[0]
        assert {r.players[k] for k, _ in r.given} == {0, 1}
        assert d.values[:2] == (F(1, 5), F(1, 5))
        # the concentrated players recurse on something containing [4/5, 1]
        assert d.rounds[1].ambient.contains_interval(F(4, 5), 1)

    def test_symprop_cap(self):
        with pytest.raises(ResourceLimitError):
            sym_prop(all_lebesgue(5), max_allocations=50)

    @given(instances(2, 4))
    def test_proportional_and_within_budget(self, vs):
        for proto in (aristo_prop, sym_prop):
            d = proto(vs)
            assert check_proportional(d, vs)
            assert check_query_bound(d)
            assert Subcake().union(*d.pieces) == Subcake.full()

    @given(instances(2, 4))
    def test_value_readings_agree(self, vs):
        d = sym_prop(vs)
        assert all(r.reading_mismatch == () for r in d.rounds)

    @given(instances(1, 3), st.data())
    @settings(max_examples=25)
    def test_on_a_subcake(self, vs, data):
        X = Subcake.from_pairs([(0, F(1, 4)), (F(1, 2), 1)])
        for proto in (kuhn, aristo_prop, sym_prop):
            d = proto(vs, X)
            assert Subcake().union(*d.pieces) == X
            for v, p in zip(vs, d.pieces):
                assert integrate_subcake(v, p) * len(vs) >= integrate_subcake(v, X)

    def test_grouping(self):
        t, h, q = F(1, 3), F(1, 2), F(1, 4)
        assert group_by_evaluation_vector([0, 1], [(t, t, t), (t, t, t)]) == [[0, 1]]
        assert group_by_evaluation_vector([0, 1], [(t, t, t), (h, q, q)]) == [[0], [1]]
        assert group_by_evaluation_vector([0, 1, 2], [(t, t, t), (t, t, t), (h, q, q)]) == [[0, 1], [2]]


class TestSymmetricEnvyFree:
    def test_equal_players(self):
        assert symmetric_envy_free([LEB] * 3).values == (F(1, 3),) * 3

    @given(instances(2, 3))
    @settings(max_examples=20)
    def test_envy_free_and_symmetric(self, vs):
        d = symmetric_envy_free(vs)
        assert check_envy_free(d, vs)
        assert check_symmetric(symmetric_envy_free, vs)

    def test_two_players_matches_cut_and_choose_values(self):
        vs = generate(2, 3, seed=5)
        d = symmetric_envy_free(vs)
        options = {cut_and_choose(*vs).values, tuple(reversed(cut_and_choose(vs[1], vs[0]).values))}
        assert d.values in options

    def test_unsupported_size(self):
        with pytest.raises(CapabilityError):
            symmetric_envy_free(all_lebesgue(4))

    def test_candidates_recorded(self):
        d = symmetric_envy_free(generate(3, 3, seed=2))
        assert d.n_candidates[0] == factorial(3) and d.n_candidates[1] >= 1
        assert d.ledger.total > 0


class TestRegistryAndSerialisation:
    def test_unknown_protocol(self):
        with pytest.raises(CapabilityError):
            run_protocol("nope", all_lebesgue(2))

    def test_wrong_arity(self):
        with pytest.raises(CapabilityError):
            run_protocol("selfridge-conway", all_lebesgue(2))

    @pytest.mark.parametrize("name", ["last-diminisher", "even-paz", "selfridge-conway", "kuhn", "aristoprop", "symprop", "sym-envy-free"])
    def test_division_round_trip(self, name):
        vs = generate(3, 3, seed=4)
        d = run_protocol(name, vs)
        back = Division.from_json(d.to_json())
        assert back.pieces == d.pieces and back.values == d.values and back.names == d.names
        assert back.stored_counts == (d.ledger.eval_count, d.ledger.cut_count)
