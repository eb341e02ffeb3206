"""Full-stack reports: both-side verdicts, diagnostics, serialization."""

import json
from fractions import Fraction

import pytest

from lagrangelab.errors import StructuralError
from lagrangelab.families import build
from lagrangelab.report import (
    check_polytope,
    check_quadrics,
    pigeonhole_reports,
    render_text,
    report_dict,
)
from lagrangelab.topology import SurfaceGenus


def test_pentagon_report():
    rep = check_polytope(build("th3").polytope)
    assert rep.source == "polytope"
    assert rep.delzant.is_delzant and rep.embedded
    assert rep.fano is not None and rep.fano.is_fano and rep.fano.c == 1
    assert rep.maslov.monotone and rep.maslov.monotone_c == 1
    assert rep.maslov.mu == (2, 2, 3)
    assert rep.maslov.minimal_maslov == 1
    assert rep.fiber == SurfaceGenus(5)
    assert not rep.fibration.orientable
    assert rep.fibration.trivial is False
    assert rep.h1_rank is None and rep.isotopy.bound is None
    assert any("fiber classes contribute 0" in d for d in rep.diagnostics)

    text = render_text(rep)
    assert "smooth (Delzant): yes" in text
    assert "fano: yes, c = 1" in text
    assert "minimal N = 1" in text
    assert "Sigma_5" in text

    blob = json.dumps(report_dict(rep))
    assert '"schema": 1' in blob
    assert '"minimal_maslov": 1' in blob


def test_weighted_pentagon_report():
    rep = check_polytope(build("th6", k=4).polytope)
    assert not rep.embedded and not rep.delzant.is_delzant
    assert rep.fano is None and "refused" in rep.fano_refusal
    assert rep.maslov.monotone and rep.maslov.monotone_c == 1
    assert rep.maslov.minimal_maslov == 4
    assert rep.fibration.orientable and rep.fibration.trivial is None
    assert any("immersion" in d for d in rep.diagnostics)
    data = report_dict(rep)
    assert data["delzant_witness"]["point"] == ["0", "8/7"]
    assert data["delzant_witness"]["index"] == 7
    assert data["fano_refused"] is not None and data["monotone"] == "1"


def test_quadrics_report_trivial_bundle():
    rep = check_quadrics(build("ex1", p=4, n=10, k=0).system)
    assert rep.source == "quadrics"
    assert rep.embedded and rep.delzant.is_delzant
    assert rep.fibration.trivial is True
    # torus rank 2 plus simply-connected fiber, in the stable range
    assert rep.h1_rank == 2
    assert rep.isotopy.bound == 4
    assert rep.dim_total == 10


def test_unknown_fiber_gets_connectivity():
    # truncated cube: 7 facets in dimension 3, hence four quadrics,
    # outside every classification rule
    from lagrangelab.exactlinalg import IntMatrix
    from lagrangelab.polytope import PolytopePresentation

    normals = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1), (1, 1, 1)]
    offsets = tuple(
        Fraction(b) for b in (0, 1, 0, 1, 0, 1, Fraction(-1, 4))
    )
    p = PolytopePresentation(
        IntMatrix.from_rows([tuple(a[i] for a in normals) for i in range(3)]), offsets
    )
    rep = check_polytope(p)
    assert len(rep.vertices) == 10
    assert rep.fiber_connectivity == 1
    assert rep.fiber.connectivity == 1
    assert any("connected" in d for d in rep.diagnostics)
    assert rep.isotopy.bound is None
    assert rep.delzant.is_delzant and rep.maslov.minimal_maslov == 2


def test_rejections():
    from lagrangelab.exactlinalg import IntMatrix
    from lagrangelab.polytope import PolytopePresentation

    unbounded = PolytopePresentation(
        IntMatrix.from_rows([(1, 1)]), (Fraction(0), Fraction(1))
    )
    with pytest.raises(StructuralError, match="bounded"):
        check_polytope(unbounded)
    empty = PolytopePresentation(
        IntMatrix.from_rows([(1, -1)]), (Fraction(-1), Fraction(-1))
    )
    with pytest.raises(StructuralError, match="nonempty"):
        check_polytope(empty)


def test_pigeonhole_reports():
    fam = [
        check_quadrics(build("ex1", p=4, n=12, k=k).system) for k in (0, 2)
    ]
    verdict = pigeonhole_reports(fam)
    assert verdict.distinct_values == (2, 4)
    assert verdict.bound == 4 and not verdict.collision
    with pytest.raises(ValueError, match="mix"):
        pigeonhole_reports([fam[0], check_polytope(build("th3").polytope)])
    with pytest.raises(ValueError, match="no reports"):
        pigeonhole_reports([])
