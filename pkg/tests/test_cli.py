"""Command-line interface: dispatch, exit-code contract, JSON round-trips."""

import json

import pytest

from regsite import sites as St
from regsite.cli import main
from support import SITE_CORPUS


@pytest.fixture
def cospan_path(tmp_path):
    p = tmp_path / "cospan.json"
    p.write_text(json.dumps(SITE_CORPUS["cospan"]))
    return str(p)


@pytest.fixture
def pres_path(tmp_path):
    p = tmp_path / "pres6.json"
    p.write_text(json.dumps({"modulus_n": 6, "relations": [],
                             "invert_polys": [], "invert_primes": []}))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_exit_codes_contract(capsys, cospan_path, pres_path):
    # verdict true -> 0
    assert run(capsys, "site", "ore", "--cat", cospan_path)[0] == 0
    # verdict false -> 1 (never 2)
    assert run(capsys, "site", "demorgan", "--cat", cospan_path)[0] == 1
    # malformed input -> 2 (never 0/1)
    assert run(capsys, "pres", "char", "--file", "/nonexistent.json")[0] == 2
    assert run(capsys, "irr", "test", "x^^", "5")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "ring", "decompose", "4", "x^2+1")[0] == 2


def test_demorgan_witness_output(capsys, cospan_path):
    code, out = run(capsys, "site", "demorgan", "--cat", cospan_path)
    assert code == 1
    assert "false" in out and "witness object P" in out


def test_pres_char_output(capsys, pres_path):
    code, out = run(capsys, "pres", "char", "--file", pres_path,
                    "--bound", "50")
    assert code == 0
    assert "{2,3}" in out and "finite" in out

    code, out = run(capsys, "--json", "pres", "char", "--file", pres_path,
                    "--bound", "50")
    data = json.loads(out)
    assert data["primes_in"] == [2, 3] and not data["contains_zero"]


def test_gset_output(capsys):
    code, out = run(capsys, "fieldsite", "gset", "2", "2", "4")
    assert code == 0
    assert "count=2" in out and "transitive" in out


def test_field_and_ring_commands(capsys):
    assert run(capsys, "field", "make", "2", "4")[1].startswith("GF(2^4")
    code, out = run(capsys, "ring", "star", "--ring", "GF(5)[x]/(x^2-1)",
                    "--elem", "x+1")
    assert code == 0
    code, out = run(capsys, "ring", "decompose", "3", "x^2", )
    assert code == 2    # nilpotents -> NotRegular -> invalid input


def test_topology_json_roundtrip_via_cli(capsys, cospan_path, tmp_path):
    code, out = run(capsys, "--json", "site", "demorganize",
                    "--cat", cospan_path)
    assert code == 0
    top_path = tmp_path / "m.json"
    top_path.write_text(out)
    C = St.validate_category(SITE_CORPUS["cospan"])
    J = St.topology_from_json(C, str(top_path))
    assert J == St.demorganization(C, St.trivial_topology(C))
    # and the re-parsed topology is accepted by downstream subcommands
    code, out = run(capsys, "site", "boolean", "--cat", cospan_path,
                    "--top", str(top_path))
    assert code == 0 and out.strip() == "true"


def test_category_json_roundtrip_via_cli(capsys, tmp_path):
    code, out = run(capsys, "--json", "fieldsite", "build", "2", "2", "1")
    assert code == 0
    payload = json.loads(out)
    C = St.validate_category(payload["category"])
    assert "0" in C.objects and "GF(4)" in C.objects


def test_sheaf_subcommand(capsys, cospan_path, tmp_path):
    ps = {"sets": {"P": ["0", "1"], "Q": ["0", "1"], "R": ["0", "1"]},
          "actions": {m: {"0": "0", "1": "1"}
                      for m in ("1P", "1Q", "1R", "f", "g")}}
    ppath = tmp_path / "ps.json"
    ppath.write_text(json.dumps(ps))
    code, _ = run(capsys, "site", "sheaf", "--cat", cospan_path,
                  "--presheaf", str(ppath))
    assert code == 0
