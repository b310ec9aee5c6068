"""
Instance and model files: loading, validation and deterministic YAML output.

Instance file keys, in order: format_version, convention, q, n, k, seed,
G1, G2, secret {D, P}. Model file keys, in order: format_version,
instance_digest, q, n, k, matrices {G1, G2}, invariants, equations,
constraints. Expanded equations are term lists [[coeff, [[var, pow], ...]], ...]
in canonical monomial order; lazy ones are {matrix, exponents, target,
direction} descriptors.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ValidationError, field_validator, model_validator

from .algebra.field import make_field
from .algebra.matrix import FqMatrix
from .errors import InstanceValidationError
from .geometry.actions import DiagonalElement, MonomialElement, Permutation
from .geometry.grassmann import subsets_lex
from .invariants.engine import ExponentVector, PairInvariant
from .lce_instance import CONVENTION, LceInstance
from .modeling.modeler import (
    INVARIANT_TAGS, EquationTag, LazyEquation, ModelEquation, ModelSystem,
)
from .modeling.polynomial import SparsePoly

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

Term = Tuple[int, List[Tuple[int, int]]]


class SecretBlock(BaseModel):
    """Secret monomial map Q = D.P; P lists the images of 1..n."""
    D: List[int]
    P: List[int]


class InstanceFile(BaseModel):
    format_version: int = FORMAT_VERSION
    convention: str = CONVENTION
    q: int
    n: int
    k: int
    seed: Optional[int] = None
    G1: List[List[int]]
    G2: List[List[int]]
    secret: Optional[SecretBlock] = None

    @field_validator('convention')
    @classmethod
    def convention_must_match(cls, v):
        if v != CONVENTION:
            raise ValueError(f"Unsupported convention {v!r}, expected {CONVENTION!r}")
        return v

    @model_validator(mode='after')
    def entries_in_range(self):
        for name in ('G1', 'G2'):
            for row in getattr(self, name):
                if any(x < 0 or x >= self.q for x in row):
                    raise ValueError(f"{name} has entries outside [0, {self.q})")
        return self


class LazyDescriptor(BaseModel):
    matrix: str
    exponents: List[int]
    target: int
    direction: EquationTag

    @field_validator('matrix')
    @classmethod
    def known_matrix(cls, v):
        if v not in ('G1', 'G2'):
            raise ValueError(f"Unknown matrix reference {v!r}")
        return v


class EquationEntry(BaseModel):
    tag: EquationTag
    invariant_index: Optional[int] = None
    terms: Optional[List[Term]] = None
    lazy: Optional[LazyDescriptor] = None

    @model_validator(mode='after')
    def exactly_one_body(self):
        if (self.terms is None) == (self.lazy is None):
            raise ValueError("An equation needs exactly one of 'terms' or 'lazy'")
        return self


class InvariantEntry(BaseModel):
    exponents: List[int]
    pair: Optional[List[List[int]]] = None
    text: Optional[str] = None


class ModelFile(BaseModel):
    format_version: int = FORMAT_VERSION
    instance_digest: str
    q: int
    n: int
    k: int
    matrices: Dict[str, List[List[int]]]
    invariants: List[InvariantEntry] = []
    equations: List[EquationEntry] = []
    constraints: List[EquationEntry] = []

    @field_validator('matrices')
    @classmethod
    def both_matrices(cls, v):
        if set(v) != {'G1', 'G2'}:
            raise ValueError("matrices must contain exactly G1 and G2")
        return v


def _dump(model: BaseModel) -> str:
    data = model.model_dump(mode='json', exclude_none=True)
    return yaml.safe_dump(data, sort_keys=False, default_flow_style=None, allow_unicode=True)


def _read_yaml(source: Union[str, Path]) -> dict:
    path = Path(source)
    if not path.exists():
        raise FileNotFoundError(f"File not found: {source}")
    with open(path, 'r', encoding='utf-8') as f:
        data = yaml.safe_load(f)
    if not isinstance(data, dict):
        raise InstanceValidationError(f"{source} does not contain a YAML mapping")
    return data


def _write(text: str, path: Union[str, Path]) -> Path:
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(text)
    return path


# Instances

def instance_to_file(instance: LceInstance) -> InstanceFile:
    secret = None
    if instance.secret is not None:
        secret = SecretBlock(D=list(instance.secret.diag.entries), P=list(instance.secret.perm.images))
    return InstanceFile(
        q=instance.q, n=instance.n, k=instance.k, seed=instance.seed,
        G1=instance.G1.to_lists(), G2=instance.G2.to_lists(), secret=secret,
    )


def instance_from_file(doc: InstanceFile) -> LceInstance:
    """Build and validate the instance described by a parsed file."""
    try:
        field = make_field(doc.q)
        secret = None
        if doc.secret is not None:
            secret = MonomialElement(DiagonalElement(field, tuple(doc.secret.D)),
                                     Permutation(tuple(doc.secret.P)))
        instance = LceInstance(
            field, doc.n, doc.k,
            FqMatrix.from_rows(field, doc.G1), FqMatrix.from_rows(field, doc.G2),
            secret, doc.seed,
        )
    except InstanceValidationError:
        raise
    except ValueError as e:
        raise InstanceValidationError(f"Invalid instance: {e}") from e
    instance.validate()
    return instance


def serialize_instance(instance: LceInstance) -> str:
    return _dump(instance_to_file(instance))


def parse_instance(text: str) -> LceInstance:
    data = yaml.safe_load(text)
    try:
        doc = InstanceFile(**(data or {}))
    except (TypeError, ValidationError) as e:
        raise InstanceValidationError(f"Invalid instance file: {e}") from e
    return instance_from_file(doc)


def load_instance(file_path: Union[str, Path]) -> LceInstance:
    """
    Load an instance file.

    Raises:
        FileNotFoundError: missing file
        yaml.YAMLError: unreadable YAML
        InstanceValidationError: schema, RREF, rank or secret check failed
    """
    data = _read_yaml(file_path)
    try:
        doc = InstanceFile(**data)
    except ValidationError as e:
        raise InstanceValidationError(f"Invalid instance file {file_path}: {e}") from e
    instance = instance_from_file(doc)
    logger.info(f"Loaded instance {Path(file_path).name} (digest {instance.digest()[:12]})")
    return instance


def save_instance(instance: LceInstance, file_path: Union[str, Path]) -> Path:
    return _write(serialize_instance(instance), file_path)


# Models

def _equation_entry(eq: ModelEquation) -> EquationEntry:
    if eq.is_expanded:
        terms = [(coeff, list(mono)) for coeff, mono in eq.body.sorted_terms()]
        return EquationEntry(tag=eq.tag, invariant_index=eq.invariant_index, terms=terms)
    lazy = eq.body
    return EquationEntry(
        tag=eq.tag, invariant_index=eq.invariant_index,
        lazy=LazyDescriptor(
            matrix='G1' if lazy.direction == EquationTag.FORWARD else 'G2',
            exponents=list(lazy.invariant.exps), target=lazy.target, direction=lazy.direction,
        ),
    )


def model_to_file(system: ModelSystem) -> ModelFile:
    invariants = []
    for v, pair in zip(system.invariants_used, system.pair_invariants):
        invariants.append(InvariantEntry(
            exponents=list(v.exps),
            pair=pair.as_lists() if pair is not None else None,
            text=v.describe(),
        ))
    return ModelFile(
        instance_digest=system.instance_digest,
        q=system.q, n=system.n, k=system.k,
        matrices={'G1': system.G1.to_lists(), 'G2': system.G2.to_lists()},
        invariants=invariants,
        equations=[_equation_entry(eq) for eq in system.equations if eq.tag in INVARIANT_TAGS],
        constraints=[_equation_entry(eq) for eq in system.constraints],
    )


def model_from_file(doc: ModelFile) -> ModelSystem:
    """Rebuild a ModelSystem; the digest must match the embedded matrices."""
    try:
        field = make_field(doc.q)
        matrices = {name: FqMatrix.from_rows(field, rows) for name, rows in doc.matrices.items()}
        digest = LceInstance(field, doc.n, doc.k, matrices['G1'], matrices['G2']).digest()
        if digest != doc.instance_digest:
            raise InstanceValidationError("instance_digest does not match the embedded matrices")

        indexer = subsets_lex(doc.n, doc.k)
        nvars = doc.n * doc.n
        system = ModelSystem(
            q=doc.q, n=doc.n, k=doc.k, G1=matrices['G1'], G2=matrices['G2'],
            instance_digest=doc.instance_digest,
        )
        for entry in doc.invariants:
            system.invariants_used.append(ExponentVector(indexer, tuple(entry.exponents)))
            system.pair_invariants.append(PairInvariant(*entry.pair) if entry.pair else None)

        for entry in doc.equations + doc.constraints:
            if entry.terms is not None:
                body = SparsePoly(doc.q, nvars, {
                    tuple((var, power) for var, power in mono): coeff for coeff, mono in entry.terms
                })
            else:
                lazy = entry.lazy
                body = LazyEquation(matrices[lazy.matrix], ExponentVector(indexer, tuple(lazy.exponents)),
                                    lazy.target % doc.q, lazy.direction)
            system.equations.append(ModelEquation(body, entry.tag, entry.invariant_index))
    except InstanceValidationError:
        raise
    except ValueError as e:
        raise InstanceValidationError(f"Invalid model: {e}") from e
    return system


def serialize_model(system: ModelSystem) -> str:
    return _dump(model_to_file(system))


def parse_model(text: str) -> ModelSystem:
    data = yaml.safe_load(text)
    try:
        doc = ModelFile(**(data or {}))
    except (TypeError, ValidationError) as e:
        raise InstanceValidationError(f"Invalid model file: {e}") from e
    return model_from_file(doc)


def load_model(file_path: Union[str, Path]) -> ModelSystem:
    data = _read_yaml(file_path)
    try:
        doc = ModelFile(**data)
    except ValidationError as e:
        raise InstanceValidationError(f"Invalid model file {file_path}: {e}") from e
    system = model_from_file(doc)
    logger.info(f"Loaded model {Path(file_path).name} with {len(system.equations)} equations")
    return system


def save_model(system: ModelSystem, file_path: Union[str, Path]) -> Path:
    return _write(serialize_model(system), file_path)
