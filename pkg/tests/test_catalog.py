"""Built-in geometry construction and geometry file round-trips."""

import json

import pytest

import cy3
from cy3 import (GeometryParseError, GeometryValidationError, pair,
                 product_curve, triple_product)
from cy3.catalog import (base_surface_for, del_pezzo, geometry_to_dict,
                         hirzebruch, load_geometry, save_geometry)

OCTIC = cy3.builtin("octic-k3")


class TestOcticK3:
    def test_validates(self):
        assert cy3.validate_geometry(OCTIC) == []

    def test_full_intersection_table(self):
        e, lf = OCTIC.basis_divisor(0), OCTIC.basis_divisor(1)
        h, lc = OCTIC.curve((1, 0)), OCTIC.curve((0, 1))
        assert triple_product(e, e, e) == -16
        assert triple_product(e, e, lf) == 4
        assert pair(e, h) == 1 and pair(e, lc) == -2
        assert pair(lf, h) == 0 and pair(lf, lc) == 1
        assert product_curve(lf, lf).is_zero()

    def test_chern_data(self):
        assert OCTIC.c2x == (56, 24)
        assert OCTIC.c3x == -168

    def test_effective_generators_are_the_curve_basis(self):
        assert OCTIC.effective_curve_generators == ((1, 0), (0, 1))


class TestBaseSurfaces:
    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_hirzebruch_data(self, n):
        base = hirzebruch(n)
        s, f = (1, 0), (0, 1)
        assert base.dot(s, s) == -n
        assert base.dot(s, f) == 1
        assert base.dot(f, f) == 0
        assert base.c1 == (2, n + 2)
        assert base.c2 == 4
        assert base.dot(base.c1, base.c1) == 8

    @pytest.mark.parametrize("k", range(1, 9))
    def test_del_pezzo_data(self, k):
        base = del_pezzo(k)
        assert base.c2 == 3 + k
        assert base.dot(base.c1, base.c1) == 9 - k
        h = (1,) + (0,) * k
        e1 = (0, 1) + (0,) * (k - 1)
        assert base.dot(h, h) == 1
        assert base.dot(e1, e1) == -1
        assert base.dot(h, e1) == 0

    @pytest.mark.parametrize("k,count", [(1, 1), (2, 3), (3, 6), (4, 10),
                                         (5, 16), (6, 27), (7, 56), (8, 240)])
    def test_extremal_curve_counts(self, k, count):
        base = del_pezzo(k)
        minus_one = [g for g in base.effective_curves if base.dot(g, g) == -1]
        assert len(minus_one) == count
        for gen in minus_one:
            assert base.dot(gen, base.c1) == 1

    def test_dp1_includes_the_ruling_fiber(self):
        base = del_pezzo(1)
        assert (1, -1) in base.effective_curves

    def test_anticanonical_is_ample_on_del_pezzo(self):
        for k in range(1, 9):
            base = del_pezzo(k)
            assert all(f.holds(base.c1) for f in base.ample_forms)

    def test_unsupported_parameters(self):
        with pytest.raises(ValueError):
            hirzebruch(3)
        with pytest.raises(ValueError):
            del_pezzo(9)
        with pytest.raises(KeyError):
            base_surface_for("octic-k3")


class TestEllipticBuilder:
    @pytest.mark.parametrize("name", [n for n in cy3.BUILTIN_NAMES
                                      if n.startswith("elliptic-")])
    def test_validates(self, name):
        assert cy3.validate_geometry(cy3.builtin(name)) == []

    def test_f0_third_chern_number(self):
        assert cy3.builtin("elliptic-f0").c3x == -480

    def test_f0_section_cube(self):
        g = cy3.builtin("elliptic-f0")
        sigma = g.basis_divisor(0)
        assert triple_product(sigma, sigma, sigma) == 8

    def test_dp3_c2_fiber_coefficient(self):
        assert cy3.builtin("elliptic-dp3").c2x[0] == 72

    @pytest.mark.parametrize("name", [n for n in cy3.BUILTIN_NAMES
                                      if n.startswith("elliptic-")])
    def test_section_ring_relations(self, name):
        g = cy3.builtin(name)
        base = base_surface_for(name)
        sigma = g.basis_divisor(0)
        c1sq = base.dot(base.c1, base.c1)
        assert triple_product(sigma, sigma, sigma) == c1sq
        assert g.c3x == -60 * c1sq
        assert g.c2x[0] == base.c2 + 11 * c1sq
        # sigma^2 = -sigma.pi*c1 as a curve class
        expected = (0,) + tuple(-c for c in base.c1)
        assert product_curve(sigma, sigma).coords == expected
        # pullbacks multiply through the base intersection form into fibers
        for i in range(1, g.rho):
            for j in range(1, g.rho):
                vec = product_curve(g.basis_divisor(i), g.basis_divisor(j)).coords
                assert vec[0] == base.intersection_form[i - 1][j - 1]
                assert not any(vec[1:])
        # the section meets the fiber class once, pullbacks miss it
        fiber = g.curve((1,) + (0,) * (g.curve_rank - 1))
        assert pair(sigma, fiber) == 1
        for i in range(1, g.rho):
            assert pair(g.basis_divisor(i), fiber) == 0


class TestGeometryFiles:
    @pytest.mark.parametrize("name", cy3.BUILTIN_NAMES)
    @pytest.mark.parametrize("suffix", [".json", ".toml"])
    def test_round_trip(self, tmp_path, name, suffix):
        g = cy3.builtin(name)
        path = tmp_path / f"geom{suffix}"
        save_geometry(g, path)
        loaded = load_geometry(path)
        assert loaded == g
        # a second save of the loaded geometry is byte-identical
        path2 = tmp_path / f"again{suffix}"
        save_geometry(loaded, path2)
        assert path.read_text() == path2.read_text()

    def test_missing_key_names_the_key(self, tmp_path):
        data = geometry_to_dict(OCTIC)
        del data["triple"]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        with pytest.raises(GeometryParseError, match="triple"):
            load_geometry(path)

    def test_inconsistent_file_reports_indices(self, tmp_path):
        data = geometry_to_dict(OCTIC)
        data["triple"] = [[0, 0, 0, -15], [0, 0, 1, 4]]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        with pytest.raises(GeometryValidationError) as err:
            load_geometry(path)
        assert any(v.where == (0, 0, 0) for v in err.value.violations)

    def test_conflicting_triple_entries(self, tmp_path):
        data = geometry_to_dict(OCTIC)
        data["triple"] = [[0, 0, 0, -16], [0, 0, 1, 4], [0, 1, 0, 5]]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        with pytest.raises(GeometryParseError, match="conflicting"):
            load_geometry(path)

    def test_out_of_range_index(self, tmp_path):
        data = geometry_to_dict(OCTIC)
        data["triple"] = [[0, 0, 7, -16]]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        with pytest.raises(GeometryParseError, match="out of range"):
            load_geometry(path)

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(GeometryParseError, match="invalid JSON"):
            load_geometry(path)

    def test_malformed_toml(self, tmp_path):
        path = tmp_path / "bad.toml"
        path.write_text("= nonsense =")
        with pytest.raises(GeometryParseError, match="invalid TOML"):
            load_geometry(path)

    def test_rationals_round_trip_as_strings(self, tmp_path):
        data = geometry_to_dict(OCTIC)
        data["c2X"] = ["113/2", 24]
        path = tmp_path / "rational.json"
        path.write_text(json.dumps(data))
        g = load_geometry(path)
        from fractions import Fraction
        assert g.c2x == (Fraction(113, 2), 24)
        save_geometry(g, path)
        assert json.loads(path.read_text())["c2X"] == ["113/2", 24]
