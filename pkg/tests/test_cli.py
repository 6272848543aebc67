import json
import re
import subprocess
import sys

import pytest

from pedalgeo.cli import main
from pedalgeo.projective import HLine, point
from pedalgeo.scene import build_scene
from pedalgeo.serialize import dumps_scene, loads, scene_document
from pedalgeo.svg import CONIC_SAMPLES, clip_line, conic_samples, render_svg
from pedalgeo.triangles import Triangle

T0_ARG = "0,0 4,0 0,3"
T0 = Triangle.from_xy((0, 0), (4, 0), (0, 3))
CONSTRUCT = ["construct", "--triangle", T0_ARG, "--point", "bevan", "--x", "0.5"]


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestVerify:
    def test_json_line(self, capsys):
        code, out, _ = run(["verify", "--check", "T2.1", "--trials", "5", "--json"], capsys)
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 1
        doc = json.loads(lines[0])
        assert doc["id"] == "T2.1" and doc["passed"] is True
        assert set(doc) >= {"id", "trials", "max_residual", "tolerance", "passed", "failures"}

    def test_unknown_check(self, capsys):
        code, _, err = run(["verify", "--check", "no_such"], capsys)
        assert code == 2 and "no_such" in err

    def test_broken_tolerance_fails(self, capsys):
        code, _, _ = run(["verify", "--check", "open_problem", "--trials", "5", "--tol", "1e-30"], capsys)
        assert code == 1

    def test_table(self, capsys):
        code, out, _ = run(["verify", "--check", "P2.1", "--check", "P2.2", "--trials", "5"], capsys)
        assert code == 0
        assert out.count("PASS") == 2

    @pytest.mark.parametrize("argv", [["verify", "--trials", "0"], ["verify", "--tol", "-1"], ["verify", "--bogus"]])
    def test_invalid_flags(self, argv, capsys):
        assert run(argv, capsys)[0] == 2


class TestConstruct:
    def test_t0_bevan(self, capsys):
        code, out, _ = run(CONSTRUCT, capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["points"]["H'"] == pytest.approx([2, 1], abs=1e-12)
        assert doc["points"]["A_P"] == pytest.approx([2.4, 1.2], abs=1e-12)
        l, m, n = doc["lines"]["radical_axis"]
        assert abs(l) <= 1e-12 and abs(m + n) <= 1e-12
        assert list(doc) == sorted(doc)
        names = {"A_P", "B_P", "C_P", "A1", "A2", "B1", "B2", "C1", "C2", "A'", "B'", "C'",
                 "H'", "Q", "Q1", "Q2", "O1c", "O2c", "O_P", "I", "O", "N", "G", "Be"}
        assert set(doc["points"]) == names

    def test_x_zero(self, capsys):
        code, _, err = run(CONSTRUCT[:-1] + ["0"], capsys)
        assert code == 1 and "ConcentricCircles" in err

    def test_point_on_circumcircle(self, capsys):
        code, _, err = run(["construct", "--triangle", T0_ARG, "--point", "4,3", "--x", "0.5"], capsys)
        assert code == 1 and "DegeneratePedal" in err

    def test_collinear(self, capsys):
        assert run(["construct", "--triangle", "0,0 1,0 2,0", "--point", "bevan", "--x", "1"], capsys)[0] == 2

    @pytest.mark.parametrize(
        "triangle, pt, x",
        [("0,0 4,0", "bevan", "1"), ("0,0 4,0 0,a", "bevan", "1"), (T0_ARG, "1;2", "1"), (T0_ARG, "io:x", "1"),
         (T0_ARG, "bevan", "-1"), (T0_ARG, "nan,1", "1")],
    )
    def test_malformed(self, triangle, pt, x, capsys):
        assert run(["construct", "--triangle", triangle, "--point", pt, "--x", x], capsys)[0] == 2

    def test_io_point(self, capsys):
        code, out, _ = run(["construct", "--triangle", T0_ARG, "--point", "io:2", "--x", "0.5"], capsys)
        assert code == 0
        assert json.loads(out)["P"] == pytest.approx([3, 2], abs=1e-12)

    def test_roundtrip_exact(self):
        s = build_scene(T0, point(3, 2), 0.5)
        doc = scene_document(s)
        back = loads(dumps_scene(s))
        assert back == doc
        for name, p in s.named_points().items():
            assert tuple(back["points"][name]) == p.xy


class TestFigure:
    def test_counts(self, tmp_path, capsys):
        out = tmp_path / "f.svg"
        argv = ["figure", "--triangle", T0_ARG, "--point", "bevan", "--x", "0.5", "-o", str(out),
                "--show", "triangle,circles,radical-axis"]
        assert run(argv, capsys)[0] == 0
        svg = out.read_text()
        circles = re.search(r'<g id="circles".*?</g>', svg, re.S).group(0)
        axis = re.search(r'<g id="radical-axis".*?</g>', svg, re.S).group(0)
        assert circles.count("<circle") == 2
        assert axis.count("<line") == 1
        assert svg.count("<line") == 4

    def test_empty_show_is_triangle(self, tmp_path, capsys):
        out = tmp_path / "f.svg"
        argv = ["figure", "--triangle", T0_ARG, "--point", "bevan", "--x", "0.5", "-o", str(out), "--show", ""]
        assert run(argv, capsys)[0] == 0
        svg = out.read_text()
        assert svg.count("<line") == 3 and "<circle" not in svg

    def test_byte_identical(self, tmp_path, capsys):
        paths = [tmp_path / "a.svg", tmp_path / "b.svg"]
        for p in paths:
            argv = ["figure", "--triangle", T0_ARG, "--point", "bevan", "--x", "0.5", "-o", str(p),
                    "--show", ",".join(["triangle", "pedal", "offsets", "circles", "radical-axis", "nagel-line", "conic"])]
            assert run(argv, capsys)[0] == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_unwritable(self, tmp_path, capsys):
        target = tmp_path / "missing" / "f.svg"
        code, _, err = run(["figure", "--triangle", T0_ARG, "--point", "bevan", "--x", "0.5", "-o", str(target)], capsys)
        assert code == 1 and "cannot write" in err

    def test_unknown_layer(self, tmp_path, capsys):
        argv = ["figure", "--triangle", T0_ARG, "--point", "bevan", "--x", "0.5", "-o", str(tmp_path / "f.svg"),
                "--show", "triangle,bogus"]
        assert run(argv, capsys)[0] == 2


class TestSvg:
    SCENE = build_scene(T0, point(3, 2), 0.5)

    def test_radical_axis_is_y_one(self):
        svg = render_svg(self.SCENE, ["radical-axis"])
        m = re.search(r'<line x1="([-\d.]+)" y1="([-\d.]+)" x2="([-\d.]+)" y2="([-\d.]+)"/>', svg)
        x1, y1, x2, y2 = map(float, m.groups())
        # SVG y is flipped
        assert y1 == y2 == -1.0
        vb = [float(v) for v in re.search(r'viewBox="([^"]+)"', svg).group(1).split()]
        assert sorted((x1, x2)) == pytest.approx([vb[0], vb[0] + vb[2]])

    def test_conic_samples(self):
        pts = conic_samples(self.SCENE)
        assert len(pts) == CONIC_SAMPLES
        for p in pts:
            assert abs(self.SCENE.c_conic.value(p)) <= 1e-9
        svg = render_svg(self.SCENE, ["conic"])
        assert "<polyline" in svg

    def test_no_layers(self):
        svg = render_svg(self.SCENE, [])
        assert "<g/>" in svg and svg.rstrip().endswith("</svg>")

    def test_clip_miss(self):
        assert clip_line(HLine(0, 1, -100), (0, 0, 1, 1)) is None
        seg = clip_line(HLine(1, -1, 0), (0, 0, 1, 1))
        assert sorted(seg) == [(0, 0), (1, 1)]

    def test_pure(self):
        layers = ["conic", "triangle", "offsets"]
        assert render_svg(self.SCENE, layers) == render_svg(self.SCENE, list(reversed(layers)))


def test_entry_point_module():
    proc = subprocess.run([sys.executable, "-m", "pedalgeo", *CONSTRUCT], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["x"] == 0.5
