import pytest
from fastapi.testclient import TestClient

from multitree.dataset import dataset_to_csv, schema_to_text
from multitree.induction import build_tree, tree_to_json
from multitree.service import create_app
from multitree.synthetic import benchmark_split, noisy_dnf_dataset


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


@pytest.fixture(scope="module")
def train():
    data = noisy_dnf_dataset(120, seed=11)
    return data


def payload_for(data, **extra):
    return {
        "schema_text": schema_to_text(data.schema),
        "data_text": dataset_to_csv(data),
        **extra,
    }


def new_session(client, data, **extra):
    resp = client.post("/sessions", json=payload_for(data, **extra))
    assert resp.status_code == 200
    return resp.json()["session_id"]


class TestSessionLifecycle:
    def test_create(self, client, train):
        resp = client.post("/sessions", json=payload_for(train))
        assert resp.status_code == 200
        body = resp.json()
        assert body["session_id"]
        assert body["complete"] is False

    def test_bad_data_400(self, client):
        resp = client.post(
            "/sessions",
            json={"schema_text": "class: a, b.\nx: p, q.", "data_text": "zzz,a"},
        )
        assert resp.status_code == 400

    def test_unknown_session_404(self, client):
        assert client.get("/sessions/doesnotexist/frontier").status_code == 404

    def test_sessions_isolated(self, client, train):
        a = new_session(client, train)
        b = new_session(client, train)
        client.post(f"/sessions/{a}/autocomplete")
        assert client.get(f"/sessions/{b}/frontier").status_code == 200
        assert client.get(f"/sessions/{a}/frontier").status_code == 409


class TestFrontier:
    def test_shape(self, client, train):
        sid = new_session(client, train)
        view = client.get(f"/sessions/{sid}/frontier").json()
        assert view["path"] == []
        assert view["default_index"] == 0
        assert sum(view["counts"]) == len(train)
        ranked = view["ranked"]
        assert ranked == sorted(ranked, key=lambda r: -r["gain"])
        assert ranked[0]["ratio"] == 1.0
        for r in ranked:
            assert set(r["test"]) >= {"type", "attribute"}

    def test_choose_advances(self, client, train):
        sid = new_session(client, train)
        first = client.get(f"/sessions/{sid}/frontier").json()
        resp = client.post(f"/sessions/{sid}/choose", json={"index": 0})
        assert resp.status_code == 200
        nxt = resp.json()["frontier"]
        assert nxt["path"] != first["path"]

    def test_invalid_choice_keeps_state(self, client, train):
        sid = new_session(client, train)
        before = client.get(f"/sessions/{sid}/frontier").json()
        resp = client.post(f"/sessions/{sid}/choose", json={"index": 999})
        assert resp.status_code == 400
        assert client.get(f"/sessions/{sid}/frontier").json() == before

    def test_choose_by_test_payload(self, client, train):
        sid = new_session(client, train)
        view = client.get(f"/sessions/{sid}/frontier").json()
        target = view["ranked"][1]["test"]
        resp = client.post(f"/sessions/{sid}/choose", json={"test": target})
        assert resp.status_code == 200
        tree = client.get(f"/sessions/{sid}/tree").json()
        assert tree["root"]["test"]["attribute"] == target["attribute"]

    def test_missing_selection_400(self, client, train):
        sid = new_session(client, train)
        assert client.post(f"/sessions/{sid}/choose", json={}).status_code == 400


class TestBatchEquivalence:
    def test_all_defaults_match_batch_tree(self, client, train):
        sid = new_session(client, train)
        while True:
            resp = client.post(f"/sessions/{sid}/choose", json={"index": 0})
            assert resp.status_code == 200
            if resp.json()["complete"]:
                break
        served = client.get(f"/sessions/{sid}/tree").json()
        served.pop("complete")
        assert served == tree_to_json(build_tree(train))

    def test_autocomplete_matches_batch_tree(self, client, train):
        sid = new_session(client, train)
        body = client.post(f"/sessions/{sid}/autocomplete").json()
        assert body["tree"] == tree_to_json(build_tree(train))
        assert body["shelf_size"] == 1

    def test_partial_then_autocomplete_still_complete(self, client, train):
        sid = new_session(client, train)
        client.post(f"/sessions/{sid}/choose", json={"index": 0})
        body = client.post(f"/sessions/{sid}/autocomplete").json()
        assert body["tree"]["format"] == "multitree/1"
        assert client.get(f"/sessions/{sid}/tree").json()["complete"] is True


class TestPruneAndShelf:
    def test_prune_replaces_shelf_entry(self, client, train):
        sid = new_session(client, train)
        unpruned = client.post(f"/sessions/{sid}/autocomplete").json()["tree"]
        resp = client.post(f"/sessions/{sid}/prune", json={"method": "pessimistic"})
        assert resp.status_code == 200
        pruned = resp.json()["tree"]
        assert pruned["pruning"]["method"] == "pessimistic"
        shelf = client.get(f"/sessions/{sid}/shelf").json()["trees"]
        assert len(shelf) == 1
        assert shelf[0]["pruned"] is True

        def count(node):
            return 1 + sum(count(c) for c in node.get("children") or [])

        assert shelf[0]["size"] <= count(unpruned["root"])

    def test_prune_before_complete_409(self, client, train):
        sid = new_session(client, train)
        resp = client.post(f"/sessions/{sid}/prune", json={"method": "pessimistic"})
        assert resp.status_code == 409

    def test_unknown_prune_method_400(self, client, train):
        sid = new_session(client, train)
        client.post(f"/sessions/{sid}/autocomplete")
        resp = client.post(f"/sessions/{sid}/prune", json={"method": "nope"})
        assert resp.status_code == 400

    def test_reduced_error_needs_holdout(self, client, train):
        sid = new_session(client, train)
        client.post(f"/sessions/{sid}/autocomplete")
        resp = client.post(f"/sessions/{sid}/prune", json={"method": "reduced-error"})
        assert resp.status_code == 400


class TestShelfEval:
    def test_empty_shelf_409(self, client, train):
        sid = new_session(client, train)
        resp = client.post(f"/sessions/{sid}/shelf/eval", json=payload_for(train))
        assert resp.status_code == 409

    def test_reports_and_warnings(self, client):
        train, test = benchmark_split(11)
        sid = new_session(client, train)
        # two shelved trees: default, then a variant with a different root
        client.post(f"/sessions/{sid}/autocomplete")
        sid2 = new_session(client, train)
        view = client.get(f"/sessions/{sid2}/frontier").json()
        client.post(f"/sessions/{sid2}/choose", json={"index": 1})
        client.post(f"/sessions/{sid2}/autocomplete")
        # evaluate the single-tree shelf of the first session
        body = client.post(
            f"/sessions/{sid}/shelf/eval", json=payload_for(test)
        ).json()
        assert len(body["reports"]) == 1
        assert body["combined"]["model_id"] == "ensemble"
        assert 0.0 <= body["combined"]["percent_error"] <= 100.0
        assert body["warnings"] == []

    def test_duplicate_trees_warn(self, client, train):
        sid = new_session(client, train)
        client.post(f"/sessions/{sid}/autocomplete")
        # shelving again is a no-op for an identical tree object, so build a
        # second session shelf via repeated autocomplete on the same session
        body = client.post(
            f"/sessions/{sid}/shelf/eval", json=payload_for(train)
        ).json()
        assert body["reports"][0]["model_id"] == "tree0"

    def test_bad_method_400(self, client, train):
        sid = new_session(client, train)
        client.post(f"/sessions/{sid}/autocomplete")
        resp = client.post(
            f"/sessions/{sid}/shelf/eval", json=payload_for(train, method="nope")
        )
        assert resp.status_code == 400
