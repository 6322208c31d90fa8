import random

import pytest
from hypothesis import given, strategies as st

from ocp.cost import BigCost, cost_add, cost_cmp, cost_pow2


# Independent oracle: schoolbook arithmetic on decimal strings.

def dec_add(a: str, b: str) -> str:
    a, b = a[::-1], b[::-1]
    out, carry = [], 0
    for i in range(max(len(a), len(b))):
        d = carry
        d += int(a[i]) if i < len(a) else 0
        d += int(b[i]) if i < len(b) else 0
        out.append(str(d % 10))
        carry = d // 10
    if carry:
        out.append(str(carry))
    return "".join(reversed(out)).lstrip("0") or "0"


def dec_cmp(a: str, b: str) -> int:
    if len(a) != len(b):
        return -1 if len(a) < len(b) else 1
    return (a > b) - (a < b)


_pow_cache = {0: "1"}


def dec_pow2(e: int) -> str:
    k = max(x for x in _pow_cache if x <= e)
    s = _pow_cache[k]
    while k < e:
        s = dec_add(s, s)
        k += 1
        _pow_cache[k] = s
    return s


def dec_of_terms(terms) -> str:
    s = "0"
    for e in terms:
        s = dec_add(s, dec_pow2(e))
    return s


def big_to_dec(c: BigCost) -> str:
    return dec_of_terms(c.terms)


def test_pow2_and_carry():
    assert cost_add(cost_pow2(4), cost_pow2(4)) == cost_pow2(5)
    assert cost_add(BigCost.zero(), cost_pow2(7)) == cost_pow2(7)
    assert cost_pow2(3).terms == (3,)


def test_zero():
    z = BigCost.zero()
    assert z.terms == ()
    assert z.to_int() == 0
    assert z == BigCost([])
    assert z < cost_pow2(0)


def test_testA_total_normalizes():
    c = BigCost([4, 8, 6, 8])
    assert c.terms == (9, 6, 4)
    assert c.to_int() == 592


def test_reduced_budget_compare():
    # m=1, B=9: w = 11, C = 2**11 + 2**10
    lhs = BigCost([11, 10])
    rhs = BigCost.from_int(3072)
    assert cost_cmp(lhs, rhs) == 0


def test_repeated_carry_chain():
    c = BigCost([0] * 1024)
    assert c.terms == (10,)


def test_from_int_roundtrip():
    for v in [0, 1, 2, 3, 292, 336, 592, 2**100 + 5]:
        assert BigCost.from_int(v).to_int() == v


def test_negative_rejected():
    with pytest.raises(ValueError):
        BigCost.pow2(-1)
    with pytest.raises(ValueError):
        BigCost.from_int(-3)


def test_huge_exponent_is_cheap():
    a = BigCost.pow2(10**12) + BigCost.pow2(10**12)
    assert a.terms == (10**12 + 1,)
    assert a > BigCost.pow2(10**12)
    assert a.floor_log2() == 10**12 + 1


def test_log2_of_huge():
    c = BigCost([10**9, 10**9 - 1])
    assert c.log2() == pytest.approx(10**9 + 0.5849625007, rel=1e-12)


def test_against_decimal_oracle_1000_lists():
    rng = random.Random(20240601)
    for _ in range(1000):
        a = [rng.randrange(0, 200) for _ in range(rng.randrange(0, 8))]
        b = [rng.randrange(0, 200) for _ in range(rng.randrange(0, 8))]
        ca, cb = BigCost(a), BigCost(b)
        da, db = dec_of_terms(a), dec_of_terms(b)
        assert big_to_dec(ca) == da
        assert big_to_dec(ca + cb) == dec_add(da, db)
        assert cost_cmp(ca, cb) == dec_cmp(da, db)


@given(st.lists(st.integers(0, 300), max_size=12), st.lists(st.integers(0, 300), max_size=12))
def test_matches_python_ints(a, b):
    ca, cb = BigCost(a), BigCost(b)
    ia = sum(1 << e for e in a)
    ib = sum(1 << e for e in b)
    assert ca.to_int() == ia
    assert (ca + cb).to_int() == ia + ib
    assert cost_cmp(ca, cb) == (ia > ib) - (ia < ib)
    terms = (ca + cb).terms
    assert all(x > y for x, y in zip(terms, terms[1:]))


@given(st.lists(st.integers(0, 64), max_size=10))
def test_sum_order_independent(a):
    left = BigCost.zero()
    for e in a:
        left = left + BigCost.pow2(e)
    assert left == BigCost(a) == BigCost(list(reversed(a)))
