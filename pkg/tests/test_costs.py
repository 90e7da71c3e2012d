
import pytest

from jaya_lab.costs import (
    CostConstants,
    acceptance_integral,
    additional_cost_bound,
    expected_comparisons,
    jaya_run_cost,
    naive_scan_costs,
    sjaya_cost_breakdown,
    sjaya_run_cost,
)
from jaya_lab.models import DISTRIBUTIONS, DistributionKind, harmonic

U = DistributionKind.uniform()
UNIT = CostConstants()
ZERO = CostConstants(0, 0, 0, 0, phi=lambda d: 0.0)


@pytest.mark.parametrize("tag", DISTRIBUTIONS)
def test_acceptance_integral_is_half(tag):
    assert abs(acceptance_integral(DistributionKind(tag)) - 0.5) <= 1e-8


def test_expected_comparisons():
    assert expected_comparisons(U, 100) == 50.0
    assert expected_comparisons(DistributionKind.normal(2, 3), 10) == pytest.approx(5.0, abs=1e-7)


def test_naive_scan():
    n, h = naive_scan_costs(4)
    assert n == 4 and h == pytest.approx(25 / 12)
    with pytest.raises(ValueError):
        naive_scan_costs(0)


def test_zero_costs():
    assert sjaya_run_cost(50, 10, 20, U, ZERO, 0.6) == 0.0
    assert jaya_run_cost(50, 10, 20, U, ZERO) == 0.0
    assert additional_cost_bound(100, ZERO) == (0.0, pytest.approx(0.0))


def test_zero_generations():
    h = harmonic(100)
    assert sjaya_run_cost(100, 30, 0, U, UNIT, 0.6907) == pytest.approx(3000 + 2 * (100 + h))
    assert jaya_run_cost(100, 30, 0, U, UNIT) == 3000


def test_sjaya_hand_expansion():
    # n=100, d=30, G=20, unit costs, phi(d)=d, E(#assign)=0.6907
    h100 = 5.18737751763962
    init = 100 * 30
    scans = 2 * (100 + h100)
    per_gen = (30            # parameter setup
               + 100 * 60    # candidate construction + evaluation
               + 100         # acceptance comparisons
               + 50 + 50     # replacements, best tests
               + 0.6907      # best-index assignments
               + 50          # worst tests
               + 1.7 * (100 + h100))
    expected = init + scans + 20 * per_gen
    assert expected == pytest.approx(132400.559590635, rel=1e-12)
    assert sjaya_run_cost(100, 30, 20, U, UNIT, 0.6907) == pytest.approx(expected, rel=1e-12)
    b = sjaya_cost_breakdown(100, 30, 20, U, UNIT, 0.6907)
    rows = dict(b.rows())
    assert rows["total"] == pytest.approx(expected, rel=1e-12)
    assert rows["best-index assignments"] == pytest.approx(20 * 0.6907)


def test_jaya_hand_expansion():
    h100 = 5.18737751763962
    per_gen = 2 * (100 + h100) + 30 + 6000 + 100 + 50
    assert jaya_run_cost(100, 30, 20, U, UNIT) == pytest.approx(3000 + 20 * per_gen, rel=1e-12)


def test_additional_bound_values():
    exact, approx = additional_cost_bound(100, UNIT)
    assert exact == pytest.approx(150 - 0.3 * (100 + harmonic(100)))
    assert exact == pytest.approx(118.44, abs=0.005)
    _, approx = additional_cost_bound(1000, UNIT)
    assert approx == pytest.approx(1197.75, abs=0.01)


@pytest.mark.parametrize("n", [100, 1000, 10**5])
def test_additional_bound_forms_agree(n):
    exact, approx = additional_cost_bound(n, UNIT)
    assert abs(exact - approx) <= 0.01 * exact


@pytest.mark.parametrize("C_c,C_a", [(1, 1), (0.5, 1), (1, 3)])
@pytest.mark.parametrize("n", [10, 100, 1000])
def test_per_generation_extra_cost_within_bound(C_c, C_a, n):
    costs = CostConstants(C_c, C_a, 1.0, 1.0)
    e_comp = n / 2
    extra = ((sjaya_run_cost(n, 5, 2, U, costs, e_comp) - jaya_run_cost(n, 5, 2, U, costs))
             - (sjaya_run_cost(n, 5, 1, U, costs, e_comp) - jaya_run_cost(n, 5, 1, U, costs)))
    assert extra <= additional_cost_bound(n, costs)[0] + 1e-9


def test_costs_monotone():
    base = dict(n=50, d=10, G=20)
    for key in base:
        lo = sjaya_run_cost(**base, dist=U, costs=UNIT, expected_assign=0.6)
        hi = sjaya_run_cost(**(base | {key: base[key] + 1}), dist=U, costs=UNIT, expected_assign=0.6)
        assert hi >= lo
        lo = jaya_run_cost(**base, dist=U, costs=UNIT)
        hi = jaya_run_cost(**(base | {key: base[key] + 1}), dist=U, costs=UNIT)
        assert hi >= lo
    for field in ("C_c", "C_a", "C_p", "C_op"):
        bumped = CostConstants(**({"C_c": 1, "C_a": 1, "C_p": 1, "C_op": 1} | {field: 2}))
        assert sjaya_run_cost(50, 10, 20, U, bumped, 0.6) >= sjaya_run_cost(50, 10, 20, U, UNIT, 0.6)
        assert jaya_run_cost(50, 10, 20, U, bumped) >= jaya_run_cost(50, 10, 20, U, UNIT)


def test_negative_cost_rejected():
    with pytest.raises(ValueError):
        CostConstants(C_c=-1)
