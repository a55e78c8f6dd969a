"""Truncated field sites: construction, coverage, rigidity, Ore evidence,
Frobenius orbits."""

import math

import pytest

from regsite import sites as St
from regsite.fieldsite import (atomic_booleanization_check,
                               build_truncated_site, char_cover_check,
                               gset_homcount, ore_fields,
                               rigidity_check_field, site_to_dicts)
from regsite.rings import format_ring, hom_enumerate
from regsite.errors import TooLarge, UnknownObject


def test_build_objects_and_morphisms():
    site = build_truncated_site(2, 2, 2)
    # zero ring + multisets of {GF(2), GF(4)} of size 1 or 2
    names = set(site.rings)
    assert names == {"0", "GF(2)", "GF(4)", "GF(2) x GF(2)",
                     "GF(2) x GF(4)", "GF(4) x GF(4)"}
    C = site.category
    St.validate_topology(site.coverage)
    # site morphisms A -> B match ring homs B -> A
    for A in names:
        for B in names:
            expected = len(hom_enumerate(site.rings[B], site.rings[A]))
            got = sum(1 for i in range(len(C.morphisms))
                      if C.src(i) == A and C.dst(i) == B)
            assert got == expected, (A, B)


def test_object_of_and_errors():
    site = build_truncated_site(2, 2, 1)
    assert site.object_of(site.rings["GF(4)"]) == "GF(4)"
    with pytest.raises(UnknownObject):
        site.object_of("GF(8)")
    with pytest.raises(TooLarge):
        build_truncated_site(7, 3, 3, ceiling=16)


def test_site_dump_feeds_the_generic_engine(tmp_path):
    import json
    site = build_truncated_site(2, 2, 1)
    cat_d, top_d = site_to_dicts(site)
    C = St.validate_category(json.loads(json.dumps(cat_d)))
    p = tmp_path / "top.json"
    p.write_text(json.dumps(top_d))
    J = St.topology_from_json(C, str(p))
    assert J == St.Topology(C, {d: site.coverage.covers[d]
                                for d in C.objects})


def test_rigidity_small():
    site = build_truncated_site(2, 2, 2)
    rep = rigidity_check_field(site)
    assert rep.passed
    assert rep.irreducibles == ("GF(2)", "GF(4)")
    assert rep.irreducibles == rep.field_objects


def test_char_cover_every_object():
    site = build_truncated_site(3, 2, 2)
    for name, ring in site.rings.items():
        assert char_cover_check(site, ring), name


def test_ore_fields():
    rep = ore_fields(2, 3)
    assert rep.passed
    assert rep.tested_pairs > 0
    # spans whose amalgam needs lcm degree > 3 are reported, never skipped
    for f_id, g_id in rep.untestable_pairs:
        assert isinstance(f_id, str) and isinstance(g_id, str)


def test_atomic_booleanization_small():
    rep = atomic_booleanization_check(2, 2)
    assert rep.passed and rep.degrees == (1, 2)


def test_gset_examples():
    rep = gset_homcount(2, 2, 4)
    assert (rep.hom_count, rep.orbit_sizes, rep.transitive) == (2, (2,), True)
    rep = gset_homcount(3, 2, 3)
    assert rep.hom_count == 0 and not rep.transitive
    rep = gset_homcount(2, 3, 6)
    assert rep.hom_count == 3 and rep.transitive
