import pytest
from fastapi.testclient import TestClient

from main import app

client = TestClient(app)


def test_index():
    body = client.get("/").json()
    assert "/analytics/law" in body["endpoints"]


def test_classify():
    response = client.get("/analytics/classify", params={
        "gap_p": "1/4", "gamma_q": "1/2", "i0_u": "1/5", "r0_fraction": 0.7,
    })
    assert response.status_code == 200
    body = response.json()
    assert body["label"]["kind"] == "C2_2"
    assert all(check["holds"] for check in body["checks"])


def test_classify_rejects_bad_exponent():
    response = client.get("/analytics/classify", params={"gap_p": "half", "gamma_q": "1/2"})
    assert response.status_code == 422


def test_law():
    response = client.get("/analytics/law", params=[("shape", "gumbel"), ("t", "0"), ("t", "1")])
    assert response.status_code == 200
    points = response.json()["points"]
    assert points[0]["cdf"] == pytest.approx(0.3678794, abs=1e-7)
    assert len(points) == 2


def test_law_needs_shape_parameters():
    response = client.get("/analytics/law", params={"shape": "case_1_2_finite", "t": 1.0, "i0": 2})
    assert response.status_code == 422


def test_hitprob():
    response = client.get("/analytics/hitprob", params={
        "kind": "linear-bdp", "beta": 0.5, "start": 1, "barrier": 2,
    })
    assert response.status_code == 200
    assert response.json()["value"] == pytest.approx(1 / 3)


@pytest.mark.parametrize("params", [
    {"kind": "linear-bdp", "beta": 0.5},
    {"kind": "id-time-bound", "alpha": 1, "mu": 1, "l": 2, "t0": 1},
    {"kind": "teleport"},
])
def test_hitprob_errors(params):
    assert client.get("/analytics/hitprob", params=params).status_code == 422
