import itertools

import pytest

from ncvalid.cost import INDEX_NAMES, LINEAR, OperationCounts, canonical_name, cost_estimate, cost_table, time_indices

GRID = list(itertools.product((50, 500, 5000), (2, 5, 10), (2, 4, 8)))


def test_nc_worked_example():
    # (p+1) n(n-1)/2 + p k(k-1)/2 = 3 * 4950 + 2 * 3 ; n(n-1)/2 = 4950
    c = cost_estimate("NC", 100, 2, 3)
    assert (c.multiplications, c.square_roots, c.exponentials) == (14856, 4950, 0)


@pytest.mark.parametrize("n, p, k", GRID)
def test_nci_rows_are_three_nc_evaluations(n, p, k):
    t = cost_table(n, p, k)
    assert t["NCI1"].multiplications == 3 * t["NC"].multiplications + 1
    assert t["NCI2"].multiplications == 3 * t["NC"].multiplications
    assert t["NCI1"].square_roots == t["NCI2"].square_roots == 3 * t["NC"].square_roots
    assert t["SF"].exponentials == 1
    assert all(v.exponentials == 0 for name, v in t.items() if name != "SF")


def test_linear_rows_grow_slower_than_quadratic_rows():
    small, big = cost_table(1000, 4, 5), cost_table(10000, 4, 5)
    quadratic = [name for name in INDEX_NAMES if name not in LINEAR]
    for name in LINEAR:
        assert big[name].multiplications / small[name].multiplications < 11
    for name in quadratic:
        assert big[name].multiplications / small[name].multiplications > 90
    assert max(big[n].multiplications for n in LINEAR) < min(big[n].multiplications for n in quadratic)


def test_names_and_aliases():
    assert canonical_name("cs") == "CSL"
    assert canonical_name("db*") == "DB*"
    assert cost_estimate("CS", 10, 2, 2) == cost_estimate("CSL", 10, 2, 2)
    assert set(cost_table(10, 2, 2)) == set(INDEX_NAMES)
    with pytest.raises(ValueError):
        canonical_name("XB")


@pytest.mark.parametrize("n, p, k", [(1, 2, 2), (10, 0, 2), (10, 2, 1), (10, 2, 11)])
def test_argument_errors(n, p, k):
    with pytest.raises(ValueError):
        cost_estimate("NC", n, p, k)


def test_counts_reject_negatives():
    with pytest.raises(ValueError):
        OperationCounts(-1, 0)


def test_timing_runs_every_index():
    t = time_indices(60, 2, 3, repeats=1)
    assert set(t) == set(INDEX_NAMES)
    assert all(v >= 0 for v in t.values())
