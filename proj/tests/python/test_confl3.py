# Copyright 2026 The confl3 Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import pytest

import confl3


def small(seed=2):
    p = confl3.GeneratorParams()
    p.grid_width, p.grid_height = 3, 2
    p.n_facilities, p.n_central_offices, p.n_steiner = 3, 1, 0
    return confl3.generate(p, seed)


def test_generate_is_seeded_and_round_trips():
    a, b = small(5), small(5)
    assert a == b
    assert a.hash == b.hash
    assert confl3.Instance.from_json(a.to_json()) == a
    assert small(6).hash != a.hash
    assert a.num_facilities == 3 and a.num_users == 6


def test_heuristic_matches_exact_on_small_instance():
    inst = small()
    params = confl3.HeuristicParams()
    params.max_outer_iterations = 2
    params.rng_seed = 4
    heu = confl3.run(inst, params)
    ex = confl3.exact(inst, strong=True)
    assert heu.solved and ex.status == "optimal"
    assert heu.objective == pytest.approx(ex.objective, abs=1e-6)
    assert heu.lower_bound <= ex.objective + 1e-9
    doc = json.loads(heu.to_json())
    assert doc["verification"]["feasible"]
    assert doc["instance"]["hash"] == inst.hash
    assert heu.to_json() == confl3.run(inst, params).to_json()


def test_strengthened_bound_never_weaker():
    for seed in range(1, 4):
        inst = small(seed)
        assert confl3.lp_bound(inst, True) >= confl3.lp_bound(inst, False) - 1e-8


def test_formulas():
    assert confl3.ogap(10.0, 7.0) == pytest.approx(0.3, abs=1e-12)
    probs = confl3.fixing_probabilities([0.2, 0.4], [0.6, 0.2], 0.5)
    assert math.fsum(probs) == pytest.approx(1.0, abs=1e-12)
    assert probs == pytest.approx([0.4 / 0.7, 0.3 / 0.7], abs=1e-12)
    assert confl3.delta_gap(148.57, 131.23) == pytest.approx(-11.6712, abs=1e-4)


def test_errors_carry_codes():
    with pytest.raises(confl3.Error) as info:
        confl3.ogap(0.0, 0.0)
    assert info.value.code == "invalid-argument"
    with pytest.raises(confl3.Error) as info:
        confl3.fixing_probabilities([], [], 0.5)
    assert info.value.code == "empty-candidates"
    with pytest.raises(ValueError):
        confl3.Instance.from_json("{}")


def test_report_pairs_solutions_by_hash():
    inst = small()
    params = confl3.HeuristicParams()
    params.max_outer_iterations = 1
    rows = confl3.pair_solutions(
        [confl3.run(inst, params).to_json(), confl3.exact(inst).to_json()])
    assert [r[0] for r in rows] == [inst.name]
    table = confl3.report([("I13", 95.20, 52.08)], csv=True)
    assert "I13,95.20,52.08,-45.29" in table


def test_exported_lp_agrees_with_highs(tmp_path):
    highspy = pytest.importorskip("highspy")
    for seed in (1, 3):
        inst = small(seed)
        path = tmp_path / f"m{seed}.lp"
        path.write_text(confl3.export_lp(inst, strong=True))
        h = highspy.Highs()
        h.setOptionValue("output_flag", False)
        assert h.readModel(str(path)) == highspy.HighsStatus.kOk
        h.run()
        assert h.getInfo().objective_function_value == pytest.approx(
            confl3.exact(inst).objective, rel=1e-7)
