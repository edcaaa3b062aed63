import importlib.util
import os

import pandas as pd
import pytest

from src.chain import Chain
from src.corpus import corpus_by_name, get_curve, load_corpus
from src.errors import CurveValidationError
from src.features import analyze_chain
from src.oracle import find_self_intersections, verify_feature_set
from src.two_chain import SELF_INTERSECTION, ZERO


def test_corpus_contents():
    curves = load_corpus()
    assert len(curves) == 12
    assert len(corpus_by_name()) == 12
    assert get_curve("cardioid").chain == Chain.from_complex([2, -1], [1, 2])


def test_unknown_curve():
    with pytest.raises(CurveValidationError):
        get_curve("lissajous")


@pytest.mark.parametrize("name", [curve.name for curve in load_corpus()])
def test_analytic_crossings_cover_the_oracle(name, oracle_cfg):
    chain = get_curve(name).chain
    report = analyze_chain(chain, oracle_config=oracle_cfg)
    analytic = report.of_kind(SELF_INTERSECTION)
    if len(report.of_kind(ZERO)) > 1:
        analytic.append(report.of_kind(ZERO)[0])
    diff = verify_feature_set(analytic, find_self_intersections(chain, oracle_cfg))
    assert diff.unmatched_numeric == []


def test_write_corpus(tmp_path):
    path = os.path.join(os.path.dirname(__file__), "..", "dataset", "create_corpus.py")
    spec = importlib.util.spec_from_file_location("create_corpus", path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)

    index = module.write_corpus(str(tmp_path / "corpus"))
    assert len(index) == 12
    written = pd.read_csv(tmp_path / "corpus" / "index.csv")
    assert list(written["Name"]) == [curve.name for curve in load_corpus()]
    assert Chain.load(tmp_path / "corpus" / "astroid.json") == get_curve("astroid").chain
