import random

import pytest

from lowmult.errors import InstanceTooLargeError, LogOfZeroError
from lowmult.gf2poly import SparsePoly, make_context, parse_poly, residue
from lowmult.reference import brute_force_log, brute_force_multiples, poly_divides

F8 = make_context(parse_poly("3,1,0"))
F16 = make_context(parse_poly("4,1,0"))


def _sets(records):
    return sorted(r.poly.exponents for r in records)


def test_poly_divides_examples():
    P = parse_poly("3,1,0")
    assert poly_divides(P, parse_poly("4,3,2,0"))  # (x+1) * P
    assert not poly_divides(P, parse_poly("2,1,0"))
    assert poly_divides(P, SparsePoly())  # zero is divisible
    with pytest.raises(ValueError):
        poly_divides(SparsePoly(), P)


def test_poly_divides_agrees_with_residue():
    # two independent arithmetic paths must agree everywhere
    rng = random.Random(11)
    P = F16.poly
    for _ in range(300):
        m = SparsePoly.from_terms(rng.randrange(64) for _ in range(rng.randrange(1, 7)))
        assert poly_divides(P, m) == (residue(m, F16) == 0)


def test_brute_force_log():
    assert brute_force_log(F8, 1) == 0
    assert brute_force_log(F8, 0b011) == 3
    assert brute_force_log(F16, 0b1001) == 14
    with pytest.raises(LogOfZeroError):
        brute_force_log(F8, 0)


def test_brute_force_log_guard():
    from lowmult.gf2poly import random_primitive_poly

    big = make_context(random_primitive_poly(30, random.Random(0)))
    with pytest.raises(InstanceTooLargeError):
        brute_force_log(big, 1)


def test_brute_force_multiples_micro():
    assert _sets(brute_force_multiples(F8, 3, 7)) == [
        (0, 1, 3), (0, 2, 6), (0, 4, 5),
    ]
    assert _sets(brute_force_multiples(F8, 2, 7)) == [(0, 7)]
    assert brute_force_multiples(F8, 1, 7) == set()
    assert _sets(brute_force_multiples(F16, 3, 15)) == [
        (0, 1, 4), (0, 2, 8), (0, 3, 14), (0, 5, 10),
        (0, 6, 13), (0, 7, 9), (0, 11, 12),
    ]


def test_brute_force_weight_parity():
    # a weight-w pass reports weights w, w-2, ... only
    records = brute_force_multiples(F16, 5, 15)
    assert {r.weight for r in records} <= {3, 5}
    records4 = brute_force_multiples(F16, 4, 15)
    assert {r.weight for r in records4} <= {2, 4}
    assert (0, 15) in {r.poly.exponents for r in records4}


def test_brute_force_records_divide():
    P = F16.poly
    for rec in brute_force_multiples(F16, 4, 15):
        assert poly_divides(P, rec.poly)
        assert rec.poly.has_constant_term()


def test_brute_force_guard():
    with pytest.raises(InstanceTooLargeError):
        brute_force_multiples(F16, 7, 4096)
