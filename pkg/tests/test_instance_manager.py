import pytest
import yaml

from src.errors import InstanceValidationError
from src.instance_manager import (
    load_instance, load_model, parse_instance, parse_model, save_instance, save_model,
    serialize_instance, serialize_model,
)
from src.lce_instance import gen_instance
from src.modeling.modeler import EquationTag, build_model
from src.solver import verify_model

RUNNING_EXAMPLE_TEXT = """\
format_version: 1
convention: Q=D*P
q: 5
n: 4
k: 2
G1:
- [1, 0, 1, 1]
- [0, 1, 1, 2]
G2:
- [1, 0, 1, 2]
- [0, 1, 3, 2]
secret:
  D: [1, 3, 4, 2]
  P: [3, 1, 4, 2]
"""


def test_running_example_serialization(running_instance):
    assert serialize_instance(running_instance) == RUNNING_EXAMPLE_TEXT
    assert parse_instance(RUNNING_EXAMPLE_TEXT) == running_instance


def test_generated_instance_round_trip():
    instance = gen_instance(11, 6, 3, 42)
    text = serialize_instance(instance)
    assert list(yaml.safe_load(text)) == [
        "format_version", "convention", "q", "n", "k", "seed", "G1", "G2", "secret",
    ]
    assert parse_instance(text) == instance
    assert serialize_instance(parse_instance(text)) == text


def test_many_instances_round_trip():
    for seed in range(100):
        q, n, k = (5, 7, 11, 13)[seed % 4], 4 + seed % 3, 2 + seed % 2
        text = serialize_instance(gen_instance(q, n, k, seed))
        assert serialize_instance(parse_instance(text)) == text


def test_generation_is_deterministic():
    assert gen_instance(7, 5, 2, 3) == gen_instance(7, 5, 2, 3)
    assert gen_instance(7, 5, 2, 3).digest() == gen_instance(7, 5, 2, 3).digest()
    assert gen_instance(7, 5, 2, 3).digest() != gen_instance(7, 5, 2, 4).digest()


def test_digest_ignores_the_secret(running_instance, inequivalent_instance):
    text = RUNNING_EXAMPLE_TEXT.split("secret:")[0]
    assert parse_instance(text).digest() == running_instance.digest()
    assert running_instance.digest() != inequivalent_instance.digest()


@pytest.mark.parametrize("broken", [
    RUNNING_EXAMPLE_TEXT.replace("Q=D*P", "Q=P*D"),
    RUNNING_EXAMPLE_TEXT.replace("- [1, 0, 1, 2]", "- [1, 0, 1, 7]"),
    RUNNING_EXAMPLE_TEXT.replace("- [1, 0, 1, 2]", "- [1, 1, 1, 2]"),
    RUNNING_EXAMPLE_TEXT.replace("D: [1, 3, 4, 2]", "D: [1, 3, 4, 4]"),
    RUNNING_EXAMPLE_TEXT.replace("P: [3, 1, 4, 2]", "P: [3, 1, 4, 4]"),
    RUNNING_EXAMPLE_TEXT.replace("q: 5", "q: 6"),
    RUNNING_EXAMPLE_TEXT.replace("k: 2", "k: 3"),
    "q: 5\n",
])
def test_invalid_instances(broken):
    with pytest.raises(InstanceValidationError):
        parse_instance(broken)


def test_instance_files(tmp_path, running_instance):
    path = save_instance(running_instance, tmp_path / "nested" / "instance.yaml")
    assert path.exists()
    assert load_instance(path) == running_instance
    with pytest.raises(FileNotFoundError):
        load_instance(tmp_path / "missing.yaml")
    (tmp_path / "list.yaml").write_text("- 1\n- 2\n")
    with pytest.raises(InstanceValidationError):
        load_instance(tmp_path / "list.yaml")


@pytest.mark.parametrize("expand", [True, False])
def test_model_round_trip(running_instance, secret_perm, expand):
    system = build_model(running_instance, budget=2, expand=expand)
    text = serialize_model(system)
    restored = parse_model(text)
    assert serialize_model(restored) == text
    assert len(restored.equations) == len(system.equations)
    assert [eq.tag for eq in restored.equations] == [eq.tag for eq in system.equations]
    assert restored.invariants_used == system.invariants_used
    assert restored.pair_invariants == system.pair_invariants
    for P in (secret_perm, ):
        assert verify_model(restored, P).all_zero
    swap_values = [r.value for r in verify_model(restored, secret_perm.inverse()).residuals]
    assert swap_values == [r.value for r in verify_model(system, secret_perm.inverse()).residuals]


def test_model_file_layout(running_instance):
    data = yaml.safe_load(serialize_model(build_model(running_instance, budget=1)))
    assert list(data) == [
        "format_version", "instance_digest", "q", "n", "k", "matrices", "invariants",
        "equations", "constraints",
    ]
    assert data["invariants"][0]["pair"] == [[1, 2], [3, 4], [1, 3], [2, 4]]
    assert data["invariants"][0]["text"] == "p12*p34/(p13*p24)"
    assert [e["tag"] for e in data["equations"]] == ["forward", "transposed"]
    assert len(data["constraints"]) == 32
    assert data["constraints"][0]["terms"][0] == [4, []]


def test_lazy_model_layout(running_instance):
    data = yaml.safe_load(serialize_model(build_model(running_instance, budget=1, expand=False)))
    lazy = data["equations"][1]["lazy"]
    assert lazy["matrix"] == "G2"
    assert lazy["direction"] == EquationTag.TRANSPOSED.value
    assert lazy["target"] == 4


def test_model_digest_mismatch(running_instance):
    text = serialize_model(build_model(running_instance, budget=1))
    tampered = text.replace(running_instance.digest(), "0" * 64)
    with pytest.raises(InstanceValidationError):
        parse_model(tampered)


def test_model_files(tmp_path, running_instance):
    system = build_model(running_instance, budget=1, expand=False)
    path = save_model(system, tmp_path / "model.yaml")
    assert serialize_model(load_model(path)) == serialize_model(system)
