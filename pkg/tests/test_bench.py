import csv
import io

import pytest

from hsets.bench import CSV_HEADER, BenchCase, bench, grid_cases, rows_to_csv, run_case


@pytest.mark.parametrize(
    "kwargs",
    [
        {"kind": "plot"},
        {"kind": "operation", "op": "xor"},
        {"kind": "operation", "op": "union", "semantic": "copy"},
        {"kind": "inclusion", "size1": -1},
        {"kind": "inclusion", "repeats": 2},
    ],
)
def test_case_validation(kwargs):
    with pytest.raises(ValueError):
        BenchCase(**kwargs)


def test_grid_cases_vary_only_size1():
    base = BenchCase("operation", "union", "value", size2=4, repeats=3)
    cases = grid_cases(base, [8, 16, 32])
    assert [c.size1 for c in cases] == [8, 16, 32]
    assert {(c.op, c.semantic, c.size2) for c in cases} == {("union", "value", 4)}


def test_run_case_returns_positive_median():
    assert run_case(BenchCase("inclusion", size1=64, batch=10, repeats=3)) > 0
    assert run_case(BenchCase("operation", "symmdiff", size1=64, size2=4, repeats=3)) > 0


def test_csv_schema_and_shape():
    cases = grid_cases(BenchCase("operation", "sum", "refer", size2=2, repeats=3), [4, 8])
    cases += grid_cases(BenchCase("inclusion", batch=5, repeats=3), [4, 8, 16])
    text = rows_to_csv(bench(cases, seed=1))
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) == 1 + 5
    assert [r[0] for r in rows[1:]] == ["operation"] * 2 + ["inclusion"] * 3
    assert [int(r[3]) for r in rows[1:]] == [4, 8, 4, 8, 16]
    assert all(int(r[6]) > 0 for r in rows[1:])
    assert rows[3][1:3] == ["in", ""]


def test_empty_operands_are_fine():
    assert run_case(BenchCase("operation", "intersection", size1=0, size2=0, repeats=3)) >= 0
    assert run_case(BenchCase("inclusion", size1=0, batch=0, repeats=3)) >= 0
