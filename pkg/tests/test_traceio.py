from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from conftest import T1, T2, T3, make_comp, small_params
from wcpdetect.errors import ModelError, TraceFormatError
from wcpdetect.traceio import GenParams, SplitMix64, generate, parse, serialize, validate

DATA = Path(__file__).parent / "data"


def test_splitmix64_reference_vector():
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(5)] == [
        6457827717110365317, 3203168211198807973, 9817491932198370423,
        4593380528125082431, 16408922859458223821,
    ]


@pytest.mark.parametrize("name, comp", [("t1", T1), ("t2", T2), ("t3", T3)])
def test_golden_reference_traces(name, comp):
    golden = (DATA / f"{name}.trace").read_bytes()
    assert serialize(comp) == golden
    assert parse(golden) == comp


def test_parse_ignores_comments_and_blank_lines():
    text = "# header comment\n\ntrace 2\nstate 1 1 1 1 0\n# mid\nstate 1 2 1 2 0\n\n" \
           "state 2 1 1 0 1\nstate 2 2 1 1 2\n"
    assert parse(text) == T1


@pytest.mark.parametrize("text, fragment, line", [
    ("trace 0\n", "n >= 1", 1),
    ("trace 2\nstate 1 1 1 1\n", "clock length", 2),
    ("trace 2\nstate 1 1 1 1 0\nstate 1 1 1 1 0\n", "duplicate", 3),
    ("trace 2\nstate 1 1 1 1 0\nstate 1 3 1 3 0\n", "index gap", 3),
    ("trace 2\nstate 1 1 1 1 x\n", "integers", 2),
    ("trace 2\nevent 1 1\n", "unknown record", 2),
    ("trace 2\nstate 3 1 1 0 0\n", "outside", 2),
    ("trace 2\nstate 1 1 2 1 0\n", "pred", 2),
    ("trace 2\nstate 2 1 1 0 1\nstate 1 1 1 1 0\n", "ordered", 3),
    ("", "header", None),
    ("state 1 1 1 1 0\n", "header", 1),
])
def test_parse_errors(text, fragment, line):
    with pytest.raises(TraceFormatError) as info:
        parse(text)
    assert fragment in str(info.value)
    assert info.value.line == line


def test_parse_reports_invariant_violation_with_line():
    text = "trace 2\nstate 1 1 1 1 0\nstate 1 2 1 2 2\nstate 2 1 1 0 1\nstate 2 2 1 2 2\n"
    with pytest.raises(TraceFormatError) as info:
        parse(text)
    assert "realizability" in str(info.value)
    assert info.value.line == 3
    assert validate(parse(text, check=False))


class TestValidate:
    def test_reference_traces_valid(self):
        assert validate(T1) == validate(T2) == validate(T3) == []

    def test_mutual_citation_is_unrealizable(self):
        # a2 cites b2 and b2 cites a2 with identical clocks: a causal cycle
        comp = make_comp({1: [([1, 0], 1), ([2, 2], 1)], 2: [([0, 1], 1), ([2, 2], 1)]})
        found = validate(comp)
        assert {(v.process, v.index) for v in found} == {(1, 2), (2, 2)}
        assert all(v.invariant == "realizability" for v in found)

    def test_cited_state_must_precede(self):
        # b2 cites a2 but a2's clock is not below b2's
        comp = make_comp({1: [([1, 0], 1), ([2, 1], 1)], 2: [([0, 1], 1), ([2, 2], 1)]})
        assert validate(comp) == []
        comp = make_comp({1: [([1, 0], 1), ([2, 3], 1)], 2: [([0, 1], 1), ([2, 2], 1)]})
        kinds = {v.invariant for v in validate(comp)}
        assert "realizability" in kinds

    def test_missing_cited_state(self):
        comp = make_comp({1: [([1, 5], 1)], 2: [([0, 1], 1)]})
        assert [v.invariant for v in validate(comp)] == ["realizability"]

    def test_own_component_decreasing(self):
        comp = make_comp({1: [([1, 0], 1), ([1, 0], 1)], 2: [([0, 1], 1)]})
        kinds = {v.invariant for v in validate(comp)}
        assert "own-component" in kinds

    def test_other_component_decreasing(self):
        comp = make_comp({1: [([1, 1], 1), ([2, 0], 1)], 2: [([0, 1], 1)]})
        assert [v.invariant for v in validate(comp)] == ["monotonicity"]

    def test_negative_entry(self):
        comp = make_comp({1: [([1, -1], 1)], 2: [([0, 1], 1)]})
        assert "non-negative" in {v.invariant for v in validate(comp)}


class TestGenerate:
    def test_no_messages_gives_independent_chains(self):
        comp = generate(GenParams(2, 2, send_prob=0.0, seed=1))
        assert [s.clock for s in comp.states()] == [(1, 0), (2, 0), (0, 1), (0, 2)]

    def test_deterministic_bytes(self):
        p = GenParams(5, 7, 0.5, 0.5, 0.5, seed=1)
        assert serialize(generate(p)) == serialize(generate(p))

    def test_golden_seed42(self):
        comp = generate(GenParams(4, 6, 0.3, 0.5, 1.0, seed=42))
        assert validate(comp) == []
        assert serialize(comp) == (DATA / "gen_seed42_n4_m6.trace").read_bytes()

    def test_single_process(self):
        comp = generate(GenParams(1, 3, send_prob=1.0, seed=9))
        assert [s.clock for s in comp.states()] == [(1,), (2,), (3,)]

    def test_pred_density_extremes(self):
        assert all(s.pred for s in generate(GenParams(3, 5, 0.3, 0.5, 1.0, 3)).states())
        assert not any(s.pred for s in generate(GenParams(3, 5, 0.3, 0.5, 0.0, 3)).states())

    @pytest.mark.parametrize("kwargs", [
        dict(n=0, m=1), dict(n=1, m=0), dict(n=2, m=2, send_prob=1.5),
        dict(n=2, m=2, recv_prob=-0.1), dict(n=2, m=2, pred_density=2.0),
        dict(n=2, m=2, seed=-1), dict(n=2, m=2, seed=2**64),
    ])
    def test_bad_params(self, kwargs):
        with pytest.raises(ModelError):
            GenParams(**kwargs)

    def test_thousand_samples_valid(self):
        for p in small_params(1000, seed0=777):
            assert validate(generate(p)) == [], p


@settings(max_examples=200, deadline=None)
@given(
    n=st.integers(1, 6), m=st.integers(1, 10),
    sp=st.floats(0, 1), rp=st.floats(0, 1), pd=st.floats(0, 1),
    seed=st.integers(0, 2**64 - 1),
)
def test_round_trip(n, m, sp, rp, pd, seed):
    comp = generate(GenParams(n, m, sp, rp, pd, seed))
    text = serialize(comp)
    assert validate(comp) == []
    assert parse(text) == comp
    assert serialize(parse(text)) == text
