import string
from pathlib import Path

import numpy as np

from relational_qm import bench as B
from relational_qm.dsl import Diagnostic, format_bench, parse_bench

BENCH_DIR = Path(__file__).resolve().parent.parent / "benches"

FIG11 = """\
source S
beamsplitter BS1
mirror M1 arm upper
mirror M2 arm lower
beamsplitter BS2
detector D1
detector D2
"""


def test_fig11_script_runs_to_all_d1():
    config = parse_bench(FIG11)
    assert not isinstance(config, Diagnostic)
    mode = B.run_bench(config)
    assert B.click_distribution(mode).tolist() == [1.0, 0.0]


def test_block_line_reproduces_blocked_vector():
    text = FIG11.replace("beamsplitter BS2", "block arm lower\nbeamsplitter BS2")
    config = parse_bench(text)
    assert not isinstance(config, Diagnostic)
    mode = B.run_bench(config)
    assert np.allclose(mode.amplitudes, [0.5, -0.5, 1 / np.sqrt(2)], atol=1e-15)


def test_empty_input_is_no_source():
    diag = parse_bench("")
    assert isinstance(diag, Diagnostic)
    assert "no source" in diag.message


def test_comments_and_blank_lines_ignored():
    config = parse_bench("# a comment\n\n" + FIG11 + "\n# trailing\n")
    assert not isinstance(config, Diagnostic)


def _expect_diag(text, fragment, expected=None):
    diag = parse_bench(text)
    assert isinstance(diag, Diagnostic), text
    assert fragment in diag.message, str(diag)
    if expected is not None:
        assert expected in diag.expected
    assert diag.line >= 1 and diag.column >= 1
    return diag


def test_diagnostics_cover_the_grammar():
    _expect_diag("laser L\n", "unknown keyword", "source")
    _expect_diag("source A\nsource B\n", "duplicate source")
    _expect_diag("beamsplitter B\nsource A\n", "source must come first")
    _expect_diag(FIG11 + "beamsplitter BS3\n", "detectors terminate")
    _expect_diag("source S\nbeamsplitter A\nbeamsplitter B\nbeamsplitter C\n",
                 "more than two")
    _expect_diag("source S\nmirror M arm upper\ndetector D1\n", "dangling arm")
    _expect_diag("source S\nblock arm lower\ndetector D1\n", "dangling arm")
    _expect_diag("source S\nbeamsplitter B\nmirror M arm sideways\n",
                 "bad arm", "upper")
    _expect_diag("source S\nbeamsplitter B\nblock arm lower\n"
                 "block arm lower\ndetector D1\n", "occupied")
    _expect_diag("source S\nbeamsplitter B\nboxes a arm lower state Z0\n",
                 "bad box state", "Z+")
    _expect_diag(FIG11 + "detector D1\n", "duplicate detector")
    _expect_diag("source S\ndetector D4\n", "bad detector", "D1")
    _expect_diag("source S extra\n", "trailing tokens")
    _expect_diag("source S\nbeamsplitter B1\nmirror M1 arm upper\n"
                 "beamsplitter B2\ndetector D1\n", "unpaired mirror")
    _expect_diag("source S\nbeamsplitter B\ndetector D1\n"
                 "block arm lower\n", "detectors terminate")


def test_diagnostic_locations():
    diag = parse_bench("source S\nbogus here\n")
    assert (diag.line, diag.column) == (2, 1)
    diag = parse_bench("source S\nmirror M arm sideways\n")
    assert diag.line == 2
    assert diag.column == 14   # points at the offending token


def test_shipped_benches_parse_and_round_trip():
    scripts = sorted(BENCH_DIR.glob("*.bench"))
    assert len(scripts) == 5
    for script in scripts:
        config = parse_bench(script.read_text())
        assert not isinstance(config, Diagnostic), script
        text = format_bench(config)
        again = parse_bench(text)
        assert again == config, script


def test_boxes_round_trip():
    text = FIG11.replace("beamsplitter BS2",
                         "boxes atom1 arm lower state Z+\nbeamsplitter BS2")
    config = parse_bench(text)
    assert not isinstance(config, Diagnostic)
    assert parse_bench(format_bench(config)) == config
    assert config.box_pairs[0].state == "Z+"


def _fuzz_lines(rng, n_lines):
    vocab = ["source", "beamsplitter", "mirror", "block", "boxes", "detector",
             "arm", "state", "upper", "lower", "Z+", "Z-", "D1", "D2", "D3",
             "S", "BS1", "M1", "atom1", "#", "%%%", "12", ""]
    lines = []
    for _ in range(n_lines):
        n_tok = rng.integers(0, 6)
        lines.append(" ".join(rng.choice(vocab) for _ in range(n_tok)))
    return "\n".join(lines)


def test_fuzzing_never_raises():
    rng = np.random.default_rng(0)
    for _ in range(2000):
        text = _fuzz_lines(rng, int(rng.integers(0, 10)))
        result = parse_bench(text)
        assert isinstance(result, (Diagnostic, B.BenchConfig))
        if isinstance(result, B.BenchConfig):
            assert parse_bench(format_bench(result)) == result


def test_random_bytes_never_raise():
    rng = np.random.default_rng(1)
    alphabet = string.printable
    for _ in range(500):
        text = "".join(rng.choice(list(alphabet))
                       for _ in range(int(rng.integers(0, 120))))
        result = parse_bench(text)
        assert isinstance(result, (Diagnostic, B.BenchConfig))
