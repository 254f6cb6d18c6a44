import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from autoeval import AutomorphicEvaluator, DensePoly, FieldContext, SyndromeTransformer, rs

F3 = FieldContext.get(3, 5)
TERNARY = DensePoly(F3, [1, 2, 1, 0, 2, 1, 1, 0, 2, 0, 1])


def test_auto_plan_and_predict():
    est = AutomorphicEvaluator().fit(TERNARY)
    assert (est.plan_.method, est.plan_.L) == ("m1", 1)
    pts = np.arange(F3.q)
    out = est.predict(pts)
    assert out.tolist() == [TERNARY(F3.element(int(a))).value for a in pts]
    assert len(est.counters_) == F3.q
    assert all(c.mul <= 9 for c in est.counters_)


@pytest.mark.parametrize("method,depth", [("horner", None), ("direct", None), ("m1", 2), ("m2", None)])
def test_explicit_methods(method, depth):
    est = AutomorphicEvaluator(method, depth).fit(TERNARY)
    assert est.predict([F3.alpha]).tolist() == [TERNARY(F3.alpha).value]
    assert est.total_cost().charged_mul <= est.plan_.predicted_mul


def test_params_and_clone():
    est = AutomorphicEvaluator("m2", depth=3)
    assert est.get_params() == {"method": "m2", "depth": 3}
    assert clone(est).set_params(depth=1).depth == 1


def test_validation():
    with pytest.raises(NotFittedError):
        AutomorphicEvaluator().predict([1])
    with pytest.raises(TypeError):
        AutomorphicEvaluator().fit([1, 2, 3])
    with pytest.raises(ValueError):
        AutomorphicEvaluator("fast").fit(TERNARY)
    with pytest.raises(ValueError):
        AutomorphicEvaluator().fit(TERNARY).predict([F3.q])


def test_syndrome_transformer():
    ctx = rs.build_rs_context()
    words = np.zeros((3, 255), dtype=np.int64)
    words[1] = rs.worst_case_word(ctx, 0).values
    out = SyndromeTransformer().fit_transform(words)
    assert out.shape == (3, 32)
    assert not out[0].any() and not out[2].any()
    expected = [v.value for v in rs.syndromes_horner(ctx, rs.ReceivedWord(tuple(words[1].tolist()))).values]
    assert out[1].tolist() == expected


def test_syndrome_transformer_validation():
    t = SyndromeTransformer()
    with pytest.raises(NotFittedError):
        t.transform(np.zeros((1, 255), dtype=int))
    t.fit()
    with pytest.raises(ValueError):
        t.transform(np.zeros((1, 254), dtype=int))
    with pytest.raises(ValueError):
        t.transform(np.full((1, 255), 256))
