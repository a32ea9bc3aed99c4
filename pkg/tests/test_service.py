"""HTTP service endpoints."""

import pytest

pytest.importorskip("fastapi")

from fastapi.testclient import TestClient

from starpir.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_scheme_info_endpoint(client):
    response = client.post(
        "/scheme/info", json={"code": "RM:1,4", "dcode": "RM:1,4"}
    )
    assert response.status_code == 200
    body = response.json()
    assert body["servers"] == 16
    assert body["rate"] == "5/16"
    assert body["collusion"] == 3
    assert body["star_dimension"] == 11
    assert body["dual_star_dimension"] == 5


def test_scheme_info_rejects_bad_spec(client):
    response = client.post(
        "/scheme/info", json={"code": "RM:9,9", "dcode": "RM:1,4"}
    )
    assert response.status_code == 400


def test_retrieve_endpoint(client):
    response = client.post(
        "/retrieve",
        json={
            "code": "FIX:C1",
            "dcode": "REP:2,5",
            "files": 3,
            "want": 2,
            "seed": 9,
        },
    )
    assert response.status_code == 200
    body = response.json()
    assert body["verified"] is True
    assert body["rate"] == "2/5"
    assert body["download_symbols"] == 15
    assert len(body["file"]) == 2  # plan rows per file


def test_retrieve_endpoint_validation(client):
    response = client.post(
        "/retrieve",
        json={"code": "FIX:C1", "dcode": "REP:2,5", "files": 2, "want": 5},
    )
    assert response.status_code == 400


def test_audit_endpoint_exact(client):
    response = client.post("/audit", json={"dcode": "RM:1,4", "t": 5})
    assert response.status_code == 200
    body = response.json()
    assert body["total"] == 4368
    assert body["unprotected"] == 1680
    assert body["bound_count"] == 1680
    assert body["tight"] is True


def test_audit_endpoint_coalition(client):
    response = client.post(
        "/audit", json={"dcode": "RM:1,4", "coalition": [1, 2, 3, 4]}
    )
    assert response.status_code == 200
    body = response.json()
    assert body["coalition"] == [1, 2, 3, 4]
    assert body["coalition_protected"] in (True, False)


def test_audit_endpoint_budget(client):
    response = client.post("/audit", json={"dcode": "RM:1,5", "t": 16})
    assert response.status_code == 422


def test_rates_endpoint(client):
    import csv
    import io

    response = client.get("/rates/fig-left")
    assert response.status_code == 200
    assert response.text.startswith(
        "n,code,code_rate,t,pir_rate_frac,pir_rate_dec,family"
    )
    parsed = list(csv.reader(io.StringIO(response.text)))
    assert ["512", "RM(4,9)", "0.5000000000", "3", "65/256", "0.2539062500", "RM"] in parsed


def test_rates_endpoint_bad_series(client):
    response = client.get("/rates/fig-down")
    assert response.status_code == 400
