import math

import pytest
from fastapi.testclient import TestClient

from cavityberry import __version__
from cavityberry.service import create_app
from cavityberry.sweep import parse_csv

FAST = dict(tol=1e-7, n_start=10, n_step=10, n_cap=200)


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestHealth:
    def test_health(self, client):
        resp = client.get("/health")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok", "version": __version__}

    def test_openapi_schema_served(self, client):
        resp = client.get("/openapi.json")
        assert resp.status_code == 200
        paths = resp.json()["paths"]
        for endpoint in ("/health", "/sweep", "/variational",
                         "/demo-controversy", "/diag", "/plot"):
            assert endpoint in paths


class TestSweepEndpoint:
    def test_rabi_sweep(self, client):
        resp = client.post("/sweep", json={
            "model": "rabi", "g_start": 0.0, "g_stop": 1.0, "g_count": 3, **FAST,
        })
        assert resp.status_code == 200
        body = resp.json()
        assert len(body["records"]) == 3
        assert body["all_converged"] is True
        assert body["svg"] is None
        first = body["records"][0]
        assert first["gamma_numeric"] == 0.0
        assert first["gamma_variational"] == 0.0
        # CSV in the response parses back to the same grid
        parsed = parse_csv(body["csv"])
        assert [r.g for r in parsed] == [0.0, 0.5, 1.0]

    def test_sweep_with_svg(self, client):
        resp = client.post("/sweep", json={
            "model": "rabi", "g_start": 0.0, "g_stop": 0.6, "g_count": 2,
            "include_svg": True, **FAST,
        })
        assert resp.status_code == 200
        assert resp.json()["svg"].startswith("<?xml")

    def test_jc_sweep_nulls_variational(self, client):
        resp = client.post("/sweep", json={
            "model": "jc", "g_start": 0.1, "g_stop": 0.4, "g_count": 2, **FAST,
        })
        body = resp.json()
        assert all(r["gamma_variational"] is None for r in body["records"])

    def test_invalid_grid_is_400(self, client):
        resp = client.post("/sweep", json={"g_start": 1.0, "g_stop": 0.2})
        assert resp.status_code == 400
        assert "g_stop" in resp.json()["detail"]

    def test_malformed_body_is_422(self, client):
        resp = client.post("/sweep", json={"g_count": "many"})
        assert resp.status_code == 422


class TestVariationalEndpoint:
    def test_rabi_superradiant(self, client):
        resp = client.post("/variational", json={"model": "rabi", "lam": 1.0})
        assert resp.status_code == 200
        body = resp.json()
        assert body["regime"] == "superradiant"
        assert body["mean_photon"] == pytest.approx(0.9375, abs=1e-12)
        assert body["energy"] == pytest.approx(-1.0625, abs=1e-12)
        assert body["gamma"] == pytest.approx(2 * math.pi * 0.9375, abs=1e-12)
        assert body["critical_coupling"] == 0.5

    def test_lambda3(self, client):
        resp = client.post("/variational", json={"model": "lambda3", "lam": 0.5})
        body = resp.json()
        assert body["critical_coupling"] == 0.25
        assert body["gamma"] == pytest.approx(2 * math.pi * 0.46875, abs=1e-12)
        assert body["c_plus"] is None

    def test_jc_unsupported_is_400(self, client):
        resp = client.post("/variational", json={"model": "jc", "lam": 1.0})
        assert resp.status_code == 400


class TestDemoEndpoint:
    def test_demo(self, client):
        resp = client.post("/demo-controversy", json={
            "lam": 0.5, "alpha_mod": 1.0, "steps": 256, "tol": 1e-7,
        })
        assert resp.status_code == 200
        body = resp.json()
        cases = {c["case"]: c for c in body["cases"]}
        assert abs(cases["jc"]["loop_phase_lower"]) > 0.5
        assert abs(cases["rabi"]["loop_phase_lower"]) < 1e-10
        assert cases["rabi"]["gamma_quantum_ground"] > 0.0
        assert "artifact" in body["text"]
        assert body["csv"].startswith("case,")


class TestDiagEndpoint:
    def test_rabi_diag(self, client):
        resp = client.post("/diag", json={
            "model": "rabi", "lam": 0.5, "n_max": 15, "levels": 4,
        })
        assert resp.status_code == 200
        body = resp.json()
        assert body["dim"] == 32
        assert len(body["energies"]) == 4
        assert body["residual"] < 1e-9 * 20

    def test_lambda_diag(self, client):
        resp = client.post("/diag", json={
            "model": "lambda3", "eta": 0.4, "n_max": 10, "levels": 3,
        })
        assert resp.status_code == 200
        assert resp.json()["dim"] == 33

    def test_bad_truncation_is_400(self, client):
        resp = client.post("/diag", json={"model": "rabi", "n_max": 0})
        assert resp.status_code == 400


class TestPlotEndpoint:
    def test_plot_records(self, client):
        records = [
            {"g": 0.0, "gamma_numeric": 0.0, "gamma_variational": 0.0,
             "mean_photon": 0.0, "n_max": 20, "converged": True},
            {"g": 1.0, "gamma_numeric": 4.3, "gamma_variational": 5.9,
             "mean_photon": 0.68, "n_max": 40, "converged": True},
        ]
        resp = client.post("/plot", json={"records": records})
        assert resp.status_code == 200
        svg = resp.json()["svg"]
        assert svg.count("<polyline") == 2

    def test_custom_title(self, client):
        records = [
            {"g": 0.0, "gamma_numeric": 0.0, "gamma_variational": None,
             "mean_photon": 0.0, "n_max": 20, "converged": True},
            {"g": 1.0, "gamma_numeric": 1.0, "gamma_variational": None,
             "mean_photon": 0.16, "n_max": 20, "converged": True},
        ]
        resp = client.post("/plot", json={
            "records": records, "style": {"title": "fig one"},
        })
        assert ">fig one</text>" in resp.json()["svg"]

    def test_empty_records_is_400(self, client):
        resp = client.post("/plot", json={"records": []})
        assert resp.status_code == 400
