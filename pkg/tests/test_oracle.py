import itertools

import pytest

from conftest import T1, T2, T3, filtered, make_comp, small_params
from wcpdetect.errors import OracleTooLarge
from wcpdetect.jlsdetect import jls_pipeline
from wcpdetect.model import Cut, filter_computation, is_consistent_cut
from wcpdetect.oracle import (
    brute_min_cut,
    enumerate_consistent_cuts,
    rejection_closure,
)
from wcpdetect.traceio import GenParams, generate


def test_enumerate_reference_traces():
    assert Cut((1, 1)) in enumerate_consistent_cuts(filter_computation(T1))
    assert enumerate_consistent_cuts(filter_computation(T3)) == []


def test_enumerate_single_process():
    fc = filter_computation(make_comp({1: [([1], 1), ([2], 1), ([3], 1)]}))
    assert enumerate_consistent_cuts(fc) == [Cut((1,)), Cut((2,)), Cut((3,))]


def test_enumeration_matches_pairwise_check():
    for p in small_params(150, seed0=3):
        fc = filtered(p)
        if fc.empty_processes:
            assert enumerate_consistent_cuts(fc) == []
            continue
        listed = set(enumerate_consistent_cuts(fc))
        for t in itertools.product(*(range(1, mi + 1) for mi in fc.m)):
            assert (Cut(t) in listed) == is_consistent_cut(fc, Cut(t))


def test_size_guard():
    fc = filter_computation(generate(GenParams(3, 128, 0.0, 0.5, 1.0, 1)))
    with pytest.raises(OracleTooLarge):
        enumerate_consistent_cuts(fc)
    with pytest.raises(OracleTooLarge):
        brute_min_cut(fc)


def test_brute_min_cut_reference_traces():
    assert brute_min_cut(filter_computation(T1)).indices == (1, 1)
    assert brute_min_cut(filter_computation(T2)).indices == (2, 1)
    assert brute_min_cut(filter_computation(T3)) is None


def test_closure_reference_traces():
    c2 = rejection_closure(filter_computation(T2))
    assert c2.rejected == {(1, 1)} and c2.failed == (False, False)
    c3 = rejection_closure(filter_computation(T3))
    assert c3.rejected == {(1, 1)} and c3.failed == (True, False)
    c1 = rejection_closure(filter_computation(T1))
    assert c1.rejected == set() and c1.failed == (False, False)


def test_closure_matches_reachability_and_detectors():
    for p in small_params(400, seed0=123):
        fc = filtered(p)
        if fc.empty_processes:
            continue
        closure = rejection_closure(fc)
        run = jls_pipeline(fc)
        assert closure.max_index(fc.n) == run.rr.max_index()
        expected = brute_min_cut(fc)
        assert (expected is None) == any(closure.failed)
        if expected is not None:
            assert expected.indices == tuple(k + 1 for k in closure.max_index(fc.n))
