from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from diffpoly.cli import EXIT_INPUT, EXIT_INTERNAL, EXIT_OK, execute, golden, main, run
from diffpoly.report import Report, emit, parse_report, parse_reports
from diffpoly.scenario import DerivSpec, ParseError, ScenarioError, ScenarioSpec, parse_spec, spec_text

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def test_parse_minimal():
    spec = parse_spec("ring zmod 4\nderivation zero\ncommand analyze")
    assert spec == ScenarioSpec(("zmod", 4), DerivSpec("zero"), "analyze")


def test_parse_inner_with_degree_bound():
    spec = parse_spec("ring triangular 2 (gf 2)\nderivation inner e12\ncommand maxideals dmax=2")
    assert spec.ring == ("triangular", 2, ("gf", 2))
    assert spec.derivation == DerivSpec("inner", "e12")
    assert spec.command == "maxideals" and spec.option("dmax") == 2


def test_parse_nested_rings_and_elements():
    spec = parse_spec(
        "# comment\n"
        "ring product (matrix 2 (gf 2)) (quotient (zmod 8) [4])\n"
        "derivation table ((e12, 0) -> (e12, 0))\n"
        "command analyze  # trailing\n"
    )
    assert spec.ring == ("product", ("matrix", 2, ("gf", 2)), ("quotient", ("zmod", 8), ("4",)))
    assert spec.derivation.pairs == (("(e12,0)", "(e12,0)"),)


def test_parse_several_variables():
    spec = parse_spec("ring gf 2\nvars 3\nderivation x2 zero\ncorner 1, 3\ncommand multivar degree=2 literal=true")
    assert spec.vars == 3 and spec.corner == (1, 3)
    assert spec.option("literal") is True and spec.option("degree") == 2


@pytest.mark.parametrize("text,line,col,expected", [
    ("ring zmod\ncommand analyze", 1, 10, ("INT",)),
    ("ring zmod 4\nderivation inner\ncommand analyze", 2, 17, ("ELEM",)),
    ("ring zmod 4\ncommand foo", 2, 9, ("analyze", "decompose", "maxideals", "multivar", "radical", "verify")),
    ("ring zmod 4\nderivation table (1 1)\ncommand analyze", 2, 21, ("->",)),
    ("rng zmod 4", 1, 1, ("bounds", "command", "corner", "derivation", "generators", "ring", "vars")),
    ("ring zmod 4", 2, 1, ("command",)),
    ("ring zmod 4 extra\ncommand analyze", 1, 13, ("end of line",)),
    ("ring zmod 4\ncommand analyze dmax=x", 2, 22, ("INT",)),
    ("ring zmod 4\nring zmod 2\ncommand analyze", 2, 1, ("bounds", "command", "corner", "derivation", "generators", "vars")),
])
def test_syntax_diagnostics(text, line, col, expected):
    with pytest.raises(ParseError) as exc:
        parse_spec(text)
    assert (exc.value.line, exc.value.col) == (line, col)
    assert exc.value.expected == expected


def test_leibniz_violation_is_a_semantic_error():
    code, out, err = execute("ring zmod 4\nderivation table (1 -> 1)\ncommand analyze")
    assert code == EXIT_INPUT and out == ""
    assert "Leibniz violated at (1, 1)" in err


def test_non_prime_power_field():
    code, _, err = execute("ring gf 6\ncommand analyze")
    assert code == EXIT_INPUT and "prime power" in err


def test_order_cap_message_names_flag():
    code, _, err = execute("ring matrix 2 (gf 5)\ncommand analyze", order_cap=100)
    assert code == EXIT_INPUT and "--order-cap" in err


@given(st.text(alphabet="ringzmodgf 0123456789()[],->=#\nabcdetx_", max_size=80))
def test_parser_is_total(text):
    try:
        spec = parse_spec(text)
    except ScenarioError as exc:
        assert str(exc)
    else:
        assert parse_spec(spec_text(spec)) == spec


@given(st.text(max_size=60))
def test_parser_is_total_on_arbitrary_text(text):
    try:
        parse_spec(text)
    except ScenarioError:
        pass


def test_run_examples():
    r = run(parse_spec("ring triangular 2 (gf 2)\nderivation inner e12\ncommand analyze"))
    assert r.get("quasi_duo") is True and r.get("k_size") == 2 and r.get("k_equals_core") is True
    r = run(parse_spec("ring triangular 2 (gf 2)\nderivation inner e12\ncommand maxideals dmax=1"))
    rows = r.rows("maxideals")
    assert len(rows) == 4 and all(row["two_sided_check"] == "pass" for row in rows)
    r = run(parse_spec("ring matrix 2 (gf 2)\nderivation zero\ncommand analyze"))
    assert r.get("quasi_duo") is False and r.get("witness_kind") == "commutator-escape"
    assert r.get("witness_elements") == ["e11", "e12"]


def test_flag_overrides_scenario_dmax():
    spec = parse_spec("ring gf 2\ncommand maxideals dmax=1")
    assert run(spec).get("handle_count") == 2
    assert run(spec, dmax=3).get("handle_count") == 5


def test_maxideal_rows_list_coefficients_low_to_high():
    r = run(parse_spec("ring gf 2\ncommand maxideals dmax=3"))
    assert [row["poly"] for row in r.rows("maxideals")][-1] == ["1", "0", "1", "1"]


def test_machine_round_trip_and_determinism():
    spec = parse_spec("ring triangular 2 (gf 2)\nderivation inner e12\ncommand verify dmax=1")
    a, b = run(spec), run(spec)
    assert parse_report(emit(a, "machine")) == a
    assert a.stable() == b.stable()
    assert emit(a.stable(), "machine") == emit(b.stable(), "machine")


values = st.recursive(
    st.none() | st.booleans() | st.integers(-10**6, 10**6) | st.text(max_size=12),
    lambda inner: st.lists(inner, max_size=3),
    max_leaves=6,
)
keys = st.from_regex(r"[a-z_]{1,8}", fullmatch=True)


@given(st.lists(st.tuples(keys, values), max_size=5),
       st.lists(st.tuples(keys, st.lists(st.lists(st.tuples(keys, values), min_size=1, max_size=3), max_size=3)),
                max_size=2, unique_by=lambda s: s[0]))
def test_report_round_trip(fields, sections):
    r = Report()
    for k, v in fields:
        r.add(k, v)
    for name, rows in sections:
        r.section(name)
        for row in rows:
            r.add_row(name, **dict(row))
    back = parse_report(emit(r, "machine"))
    assert back == r


def test_human_format_is_aligned_table():
    r = run(parse_spec("ring zmod 4\ncommand maxideals dmax=1"))
    text = emit(r, "human")
    assert "maxideals (2)" in text
    header = next(ln for ln in text.splitlines() if ln.strip().startswith("ideal "))
    assert "two_sided_check" in header


def test_exit_codes_through_main(tmp_path, capsys):
    good = tmp_path / "good.scn"
    good.write_text("ring zmod 4\ncommand analyze\n")
    bad = tmp_path / "bad.scn"
    bad.write_text("ring zmod\n")
    assert main([str(good), "--format", "machine"]) == EXIT_OK
    assert parse_report(capsys.readouterr().out).get("quasi_duo") is True
    assert main([str(bad)]) == EXIT_INPUT
    assert "line 1, column 10" in capsys.readouterr().err
    assert main([str(tmp_path / "missing.scn")]) == EXIT_INPUT


def test_internal_failure_exit_code(monkeypatch):
    from diffpoly import analyzer, cli
    from diffpoly.checks import Check

    monkeypatch.setattr(cli, "verify_instance", lambda S, d, b: [("forced", Check(False, None, "forced"))])
    code, out, err = execute("ring zmod 4\ncommand verify")
    assert code == EXIT_INTERNAL and "result=" not in out and "invariant" in err
    assert analyzer.verify_instance is not cli.verify_instance


def test_batch_preserves_order(tmp_path, capsys):
    names = ["gf5_radical", "zmod4_analyze", "m2_gf2_zero", "error_label"]
    listing = tmp_path / "list.batch"
    listing.write_text("\n".join(str(SCENARIOS / f"{n}.scn") for n in names) + "\n")
    code = main(["--batch", str(listing), "--format", "machine", "--jobs", "2"])
    reports = parse_reports(capsys.readouterr().out)
    assert code == EXIT_INPUT
    assert [r.get("ring") for r in reports] == ["gf 5", "zmod 4", "matrix 2 (gf 2)"]


@pytest.mark.parametrize("scn", sorted(SCENARIOS.glob("*.scn")), ids=lambda p: p.stem)
def test_golden_reports(scn):
    want = (SCENARIOS / "golden" / f"{scn.stem}.out").read_text()
    assert golden(scn.read_text()) == want


def test_report_values_may_contain_unicode_line_separators():
    r = Report()
    r.add("note", "a\x85b c")
    r.add_row("rows", value="\x1c")
    assert parse_report(emit(r, "machine")) == r
