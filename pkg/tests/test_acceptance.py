"""Acceptance suite: one test per criterion.

Each test is tagged with its criterion number; the session summary prints a
PASS/FAIL line per criterion together with the evidence recorded via the
``note`` fixture.  Sweeps over "all shapes" include disconnected shapes as
produced by ``enumerate_shifted_skew_shapes(n, connected_only=False)``.
"""

from __future__ import annotations

import json
import time
from functools import lru_cache

import pytest

from qfray.cli import main
from qfray.closedform import Family, cross_check
from qfray.expansion import (
    QExpansion,
    count_ballot_tableaux,
    expansion_to_series,
    fingerprint,
    format_expansion,
    is_q_positive,
    monomial_series,
    parse_expansion,
    q_expansion,
    q_product,
)
from qfray.search import compute_records, run_campaign, sorted_records
from qfray.shapes import (
    ShapeError,
    antipodal,
    append_detached_row,
    count_turns,
    enumerate_frayed_ribbons,
    enumerate_shifted_skew_shapes,
    shift_top_rows,
)
from qfray.tableaux import greedy_filling

criterion = pytest.mark.criterion


@lru_cache(maxsize=None)
def all_expansions(n: int) -> dict[str, QExpansion]:
    """Expansion of every shape of size ``n``, disconnected ones included."""
    return {str(s): q_expansion(s) for s in enumerate_shifted_skew_shapes(n, connected_only=False)}


def expansion_of(shape) -> QExpansion:
    found = all_expansions(shape.size).get(str(shape)) if shape.size <= 7 else None
    return found if found is not None else q_expansion(shape)


def partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 0, -1):
        for rest in partitions(n - p, p):
            yield (p,) + rest


def run_cli(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out.strip()


@criterion(1, "monomial oracle equals Q expansion for every shape of size <= 7, m in {2,3,4}")
def test_oracle_consistency(note):
    start = time.perf_counter()
    checked = 0
    for n in range(1, 8):
        for shape in enumerate_shifted_skew_shapes(n, connected_only=False):
            exp = expansion_of(shape)
            for m in (2, 3, 4):
                assert monomial_series(shape, m) == expansion_to_series(exp, m), (str(shape), m)
                checked += 1
    note(f"{checked} (shape, m) pairs equal, {time.perf_counter() - start:.0f}s")


@criterion(2, "verify --class frayed --max-size 11 reports zero violations")
def test_frayed_distinctness_to_11(capsys, note):
    code, out = run_cli(capsys, "verify", "--class", "frayed", "--max-size", "11")
    assert code == 0, out
    lines = out.splitlines()
    assert len(lines) == 8 and all(line.endswith("ok") for line in lines)
    note(lines[-1])


@criterion(3, "closed forms equal the engine over their families to size 10")
def test_closed_form_agreement(note):
    report = cross_check(10)
    assert report.ok, report.mismatches[:5]
    assert all(report.checked[f] > 0 for f in Family)
    note(", ".join(f"{f.value} {c}" for f, c in report.checked.items()))


R = "10 8 7 4 1/8 7 4 1"
R_PRIME = "10 8 7 5 4 1/8 7 5 4 1"
D = "9 7 6 3 1/7 6 3"
D_PRIME = "9 7 6 4 3 1/7 6 4 3"
RIBBON_PAIR = (
    "4*Q[4 3 2 1] + 34*Q[5 3 2] + 34*Q[5 4 1] + 56*Q[6 3 1] + 45*Q[6 4]"
    " + 24*Q[7 2 1] + 45*Q[7 3] + 21*Q[8 2] + 5*Q[9 1] + 1*Q[10]"
)
DIFF_R = (
    "1*Q[4 3 2 1] + 8*Q[5 3 2] + 8*Q[5 4 1] + 18*Q[6 3 1] + 15*Q[6 4]"
    " + 11*Q[7 2 1] + 21*Q[7 3] + 13*Q[8 2] + 4*Q[9 1] + 1*Q[10]"
)
DIFF_R_PRIME = (
    "1*Q[4 3 2 1] + 10*Q[5 3 2] + 11*Q[5 4 1] + 20*Q[6 3 1] + 17*Q[6 4]"
    " + 11*Q[7 2 1] + 21*Q[7 3] + 13*Q[8 2] + 4*Q[9 1] + 1*Q[10]"
)


@criterion(4, "printed examples reproduce through the CLI; one-turn size-5 equality adjudicated")
def test_printed_examples(capsys, note):
    def expand(shape: str) -> QExpansion:
        code, out = run_cli(capsys, "expand", shape)
        assert code == 0
        return parse_expansion(out)

    pair_51 = parse_expansion("1*Q[6 2] + 2*Q[5 3] + 2*Q[5 2 1] + 2*Q[4 3 1]")
    assert expand("6 5 4 2 1/5 4 1") == expand("6 5 2 1/5 1") == pair_51
    pair_53 = parse_expansion("3*Q[4 3 1] + 3*Q[5 2 1] + 5*Q[5 3] + 4*Q[6 2] + 1*Q[7 1]")
    assert expand("7 6 5 3/6 5 2") == expand("7 6 5 1/6 4 1") == pair_53
    assert expand(R) == expand(R_PRIME) == parse_expansion(RIBBON_PAIR)
    for first, second, want in ((R, D, DIFF_R), (R_PRIME, D_PRIME, DIFF_R_PRIME)):
        code, out = run_cli(capsys, "diff", first, second)
        text, positive = out.splitlines()
        assert code == 0 and parse_expansion(text) == parse_expansion(want)
        assert positive == "positive: true"
    code, out = run_cli(capsys, "greedy", "8 7 5 2/3 1")
    assert code == 0 and out.splitlines()[-1] == "monomial: 2^4 x1^8 x2^7 x3^3"
    note("both equal near-ribbon pairs, the ribbon pair, both differences and the greedy example reproduce exactly")

    # the printed size-5 equality, with the monomial oracle as the authority
    printed = parse_expansion("1*Q[4 1] + 1*Q[3 2]")
    frayed, ordinary = expand("4 3 1/3"), expand("4 3/2")
    for shape, exp in (("4 3 1/3", frayed), ("4 3/2", ordinary)):
        for m in (2, 3, 4, 5):
            assert monomial_series(shape, m) == expansion_to_series(exp, m)
    equality_holds = frayed == ordinary
    note(f"size-5 check: Q[4 3 1/3] = {format_expansion(frayed)}; Q[4 3/2] = {format_expansion(ordinary)}")
    note(
        "verdict: printed equality "
        + ("holds" if equality_holds else "does NOT hold")
        + f"; printed value matches 4 3/2: {ordinary == printed}; matches 4 3 1/3: {frayed == printed}"
    )
    # record the verdict actually observed; the oracle agreement above is the gate
    assert frayed[(3, 2)] == 2 * count_turns("4 3 1/3").total


@criterion(5, "fingerprint invariant under antipodal reflection for all shapes of size <= 8")
def test_antipodal_invariance(note):
    start = time.perf_counter()
    checked = outside = 0
    for n in range(1, 9):
        shapes = enumerate_shifted_skew_shapes(n, connected_only=False)
        if n <= 7:
            fps = {k: format_expansion(v) for k, v in all_expansions(n).items()}
        else:
            fps = {str(s): fingerprint(s) for s in shapes}
        for shape in shapes:
            # wide disconnected shapes reflect to tall ones outside the
            # enumeration window; those are computed directly
            image = antipodal(shape)
            key = str(image)
            if key not in fps:
                fps[key] = fingerprint(image)
                outside += 1
            assert fps[str(shape)] == fps[key], str(shape)
            checked += 1
    note(f"{checked} shapes ({outside} antipodes outside the enumeration window), {time.perf_counter() - start:.0f}s")


@criterion(6, "coefficient of Q[n-2 2] is twice the turn count for frayed ribbons of size 5..10")
def test_turn_coefficient(note):
    checked = 0
    for n in range(5, 11):
        for rec in compute_records(enumerate_frayed_ribbons(n)):
            assert rec.coefficient((n - 2, 2)) == 2 * rec.turns, rec.shape
            checked += 1
    note(f"{checked} frayed ribbons")


@criterion(7, "leading monomial equals the greedy monomial for all shapes of size <= 7")
def test_greedy_leading_term(note):
    checked = 0
    for n in range(1, 8):
        for shape in enumerate_shifted_skew_shapes(n, connected_only=False):
            g = greedy_filling(shape)
            m = max(len(g.content), 2)
            key, coeff = monomial_series(shape, m).leading_term()
            assert coeff == g.coefficient and key == g.content + (0,) * (m - len(g.content)), str(shape)
            checked += 1
    note(f"{checked} shapes")


@criterion(8, "shifting the top k rows right gives a Q-positive difference, |D| <= 7")
def test_row_shift_positivity(note):
    checked = 0
    for n in range(1, 8):
        for shape in enumerate_shifted_skew_shapes(n, connected_only=False):
            for k in range(1, len(shape.outer) + 1):
                try:
                    moved = shift_top_rows(shape, k)
                except ShapeError:
                    continue
                diff = expansion_of(moved) - expansion_of(shape)
                assert is_q_positive(diff), (str(shape), k)
                checked += 1
    note(f"{checked} (D, k) pairs")


@criterion(9, "Q of D with a detached row r equals Q_D * Q_(r), |D| <= 6, r <= 3")
def test_product_law(note):
    checked = 0
    for n in range(1, 7):
        for shape in enumerate_shifted_skew_shapes(n, connected_only=False):
            qd = expansion_of(shape)
            for r in (1, 2, 3):
                # q_product raises on a negative power of 2
                assert q_product(qd, q_expansion(str(r))) == q_expansion(append_detached_row(shape, r))
                checked += 1
    note(f"{checked} (D, r) pairs")


@criterion(10, "pruned and unpruned ballot counts agree for all shapes of size <= 6, all contents")
def test_pruning_soundness(note):
    checked = 0
    for n in range(1, 7):
        contents = list(partitions(n))
        for shape in enumerate_shifted_skew_shapes(n, connected_only=False):
            for c in contents:
                assert count_ballot_tableaux(shape, c, True) == count_ballot_tableaux(shape, c, False), (str(shape), c)
                checked += 1
    note(f"{checked} (shape, content) pairs")


@criterion(11, "verify output with 1 and 8 workers gives identical sorted records")
def test_determinism(tmp_path, note):
    one, eight = tmp_path / "t1.jsonl", tmp_path / "t8.jsonl"
    assert run_campaign(range(4, 12), one, threads=1).ok
    assert run_campaign(range(4, 12), eight, threads=8).ok
    a, b = sorted_records(one), sorted_records(eight)
    assert a == b and len(a) == sum(len(enumerate_frayed_ribbons(n)) for n in range(4, 12))
    assert one.read_text() == eight.read_text()
    assert all(json.loads(x)["schema"] == "qfray.v1" for x in a)
    note(f"{len(a)} records identical")
