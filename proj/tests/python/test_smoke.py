# Copyright 2026 The SAE Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os

import pytest

import sae

SCENARIOS = os.environ.get("SAE_SCENARIO_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "scenarios"))


def test_threshold_example_reveals_exactly_three():
    c = sae.Cluster(escrows=3, keys=1, seed=2)
    for who in ("a", "b", "c", "d"):
        assert c.register(who, 1)["ok"]
    for who, t in (("a", 2), ("b", 3), ("c", 5)):
        assert c.file(who, who, accused="m", text=who, t=t)["ok"]
    assert all(c.revealed(j) == set() for j in c.honest)
    assert c.file("d", "d", accused="m", text="d", t=3)["ok"]
    for j in c.honest:
        assert c.revealed(j) == {"a", "b", "d"}
    assert c.converged()
    assert c.culprits == set()


def test_reveal_carries_the_filing():
    c = sae.Cluster(escrows=3, keys=1, seed=3)
    c.register("alice", 1)
    c.file("x", "alice", accused="bob", text="hello", t=1)
    (r,) = c.reveals(1)
    assert (r["label"], r["identity"], r["t"], r["text"]) == ("x", "alice", 1, "hello")
    m = c.metrics()
    assert m["dvrf_registration"] == 2
    assert m["dvrf_reveal"] == 1


def test_rejection_codes_surface():
    c = sae.Cluster(escrows=3, keys=1, seed=4)
    assert c.register("alice", 1)["ok"]
    assert c.register("alice", 1)["code"] == "QuotaExceeded"


def test_corrupt_escrow_is_named():
    c = sae.Cluster(escrows=3, keys=1, seed=5, corrupt={2: "wrong-multiply-share"})
    assert not c.register("alice", 1)["ok"]
    assert c.culprits == {2}


def test_oracle_and_fuzz():
    assert sae.oracle_reveal([("m", 2), ("m", 3), ("m", 5)]) == set()
    assert sae.oracle_reveal([("m", 2), ("m", 3), ("m", 5), ("m", 3)]) == {0, 1, 3}
    rep = sae.fuzz(trials=50, seed=9)
    assert rep["trials"] == 50 and rep["divergences"] == 0


def test_reference_vrf_round_trip():
    sk, x = b"\x07" * 32, b"\x2a" * 32
    value, proof = sae.reference_vrf(sk, x)
    assert (value, proof) == sae.reference_vrf(sk, x)
    pk = sae.vrf_public_key(sk)
    assert sae.verify_vrf(pk, proof, x)
    bad = bytearray(proof)
    bad[-1] ^= 1
    assert not sae.verify_vrf(pk, bytes(bad), x)
    assert not sae.verify_vrf(pk, proof, b"\x2b" * 32)


def test_scenario_file_runs():
    with open(os.path.join(SCENARIOS, "thresholds.sae")) as f:
        rep = sae.run_scenario(f.read())
    assert rep["passed"], rep["text"]
    assert rep["converged"]


def test_bad_scenario_raises():
    with pytest.raises(sae.SaeError, match="line 2"):
        sae.run_scenario("sae-scenario v1\nnonsense here\n")
