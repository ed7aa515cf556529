import random

import pytest

from lowmult.dlog import (
    build_engine,
    discrete_log,
    load_engine,
    predict_table_bytes,
    save_engine,
    zech_log,
    zech_orbit,
)
from lowmult.errors import (
    LogOfZeroError,
    MemoryBudgetExceededError,
    ZechUndefinedError,
)
from lowmult.gf2poly import make_context, parse_poly, random_primitive_poly
from lowmult.reference import brute_force_log

F8 = make_context(parse_poly("3,1,0"))
F16 = make_context(parse_poly("4,1,0"))
ENG8 = build_engine(F8)
ENG16 = build_engine(F16)


def test_discrete_log_examples():
    assert ENG8.discrete_log(1) == 0
    assert ENG8.discrete_log(0b011) == 3  # x^3 = x + 1
    assert ENG16.discrete_log(0b1001) == 14
    with pytest.raises(LogOfZeroError):
        discrete_log(ENG8, 0)


def test_round_trip_exhaustive_small():
    for ctx, eng in ((F8, ENG8), (F16, ENG16)):
        for k in range(ctx.order):
            assert eng.discrete_log(ctx.monomial_residue(k)) == k


def test_log_of_product():
    rng = random.Random(5)
    ctx = make_context(parse_poly("11,2,0"))
    eng = build_engine(ctx)
    for _ in range(100):
        a = rng.randrange(1, 1 << ctx.n)
        b = rng.randrange(1, 1 << ctx.n)
        la, lb = eng.discrete_log(a), eng.discrete_log(b)
        assert eng.discrete_log(ctx.mul(a, b)) == (la + lb) % ctx.order


def test_prime_power_lifting():
    # 2^21 - 1 = 7^2 * 127 * 337 exercises the non-squarefree path
    ctx = make_context(parse_poly("21,2,0"))
    eng = build_engine(ctx)
    rng = random.Random(6)
    for _ in range(200):
        k = rng.randrange(ctx.order)
        assert eng.discrete_log(ctx.monomial_residue(k)) == k


def test_threshold_does_not_change_answers():
    ctx = make_context(parse_poly("14,12,11,1,0"))
    full = build_engine(ctx, 10**7)
    bsgs = build_engine(ctx, 1)
    assert {s for _, _, s, _ in full.strategy_summary()} == {"table"}
    assert {s for _, _, s, _ in bsgs.strategy_summary()} == {"bsgs"}
    rng = random.Random(7)
    for _ in range(300):
        a = rng.randrange(1, 1 << ctx.n)
        assert full.discrete_log(a) == bsgs.discrete_log(a)


def test_split_strategies_example():
    eng = build_engine(F16, 4)
    assert eng.strategy_summary() == [(3, 1, "table", 3), (5, 1, "bsgs", 3)]
    eng_full = build_engine(F8, 10**6)
    assert eng_full.strategy_summary() == [(7, 1, "table", 7)]


def test_oversized_bsgs_tables():
    ctx = make_context(parse_poly("14,12,11,1,0"))
    eng = build_engine(ctx, 1, bsgs_baby_entries=4096)
    ref = build_engine(ctx)
    rng = random.Random(8)
    for _ in range(200):
        a = rng.randrange(1, 1 << ctx.n)
        assert eng.discrete_log(a) == ref.discrete_log(a)


def test_agrees_with_brute_force():
    ctx = make_context(parse_poly("10,3,0"))
    eng = build_engine(ctx)
    for a in range(1, 1 << ctx.n):
        assert eng.discrete_log(a) == brute_force_log(ctx, a)


def test_zech_examples():
    assert zech_log(ENG8, 1) == 3
    assert zech_log(ENG8, 2) == 6
    with pytest.raises(ZechUndefinedError):
        zech_log(ENG8, 7)
    with pytest.raises(ZechUndefinedError):
        zech_log(ENG8, 0)
    assert zech_log(ENG8, 8) == zech_log(ENG8, 1)  # argument taken mod M


def test_zech_orbit_contains_known_pairs():
    orbit = zech_orbit(1, 3, 7)
    assert {(3, 1), (2, 6), (6, 2)} <= orbit
    assert all(1 <= j <= 6 and 1 <= z <= 6 for j, z in orbit)


def test_zech_orbit_pairs_are_valid_and_bounded():
    for ctx, eng in ((F8, ENG8), (F16, ENG16)):
        M = ctx.order
        for i in range(1, M):
            zi = eng.zech_log(i)
            orbit = zech_orbit(i, zi, M)
            assert len(orbit) <= 6 * ctx.n
            for j, zj in orbit:
                assert eng.zech_log(j) == zj


def test_memory_prediction_and_budget():
    predicted = predict_table_bytes(F16, 10**6)
    assert predicted == (-(-3 * 4 // 3) + -(-5 * 4 // 3)) * 16
    with pytest.raises(MemoryBudgetExceededError):
        build_engine(F16, 10**6, max_table_bytes=16)


def test_default_plan_spills_huge_primes():
    ctx = make_context(random_primitive_poly(31, random.Random(1)))
    assert ctx.factorization == [(2147483647, 1)]
    plan = build_engine(ctx).strategy_summary()
    assert plan[0][2] == "bsgs"
    assert plan[0][3] == 46341  # ceil(sqrt(2^31 - 1))


def test_cache_round_trip(tmp_path):
    ctx = make_context(parse_poly("12,6,4,1,0"))
    eng = build_engine(ctx, 100)
    path = tmp_path / "engine.bin"
    save_engine(eng, str(path))
    loaded = load_engine(str(path))
    assert loaded.ctx.poly == ctx.poly
    rng = random.Random(9)
    for _ in range(100):
        a = rng.randrange(1, 1 << ctx.n)
        assert loaded.discrete_log(a) == eng.discrete_log(a)
    # re-saving the loaded engine reproduces the file bit for bit
    path2 = tmp_path / "engine2.bin"
    save_engine(loaded, str(path2))
    assert path.read_bytes() == path2.read_bytes()


def test_cache_rejects_corruption(tmp_path):
    eng = build_engine(F16)
    path = tmp_path / "engine.bin"
    save_engine(eng, str(path))
    blob = bytearray(path.read_bytes())
    blob[len(blob) // 2] ^= 0xFF
    path.write_bytes(bytes(blob))
    with pytest.raises(ValueError):
        load_engine(str(path))
