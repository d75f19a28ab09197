"""Declarative problem files: parsing, schema validation, and assembly of a
fully validated Instance.  This is the only module that touches the disk.
"""

import json
import os

from .errors import SchemaError
from .fields import field_from_json
from .algebras import (ModuleData, StructureAlgebra,
                       module_from_generator_actions)
from .factor_sets import PartialFactorSet
from .groups import FiniteGroup
from .instance import Instance
from .partial_actions import TwistedPartialAction, UnitalPartialAction

__all__ = ["ProblemSpec", "parse_spec", "parse_spec_file", "build_instance",
           "fixture_dir", "bundled_fixtures", "load_fixture"]

DEFAULT_OPTIONS = {"max_p": 2, "max_q": 2, "max_n": 2, "cap": 200_000,
                   "seed": 0, "monoid_limit": 512}


class ProblemSpec:
    def __init__(self, name, field, group, sigma, action, module, options,
                 raw):
        self.name = name
        self.field = field
        self.group = group
        self.sigma = sigma
        self.action = action          # TwistedPartialAction or None
        self.module = module          # "regular" or dict
        self.options = options
        self.raw = raw


def _require(cond, path, message):
    if not cond:
        raise SchemaError(f"{path}: {message}")


def parse_spec(obj, name=None):
    _require(isinstance(obj, dict), "$", "problem spec must be an object")
    _require("field" in obj, "$.field", "missing")
    field = field_from_json(obj["field"])
    _require("group" in obj, "$.group", "missing")
    try:
        group = FiniteGroup.from_json(obj["group"])
    except SchemaError:
        raise
    except Exception as exc:
        raise SchemaError(f"$.group: {exc}")
    sigma = None
    if "sigma" in obj and obj["sigma"] is not None:
        tab = obj["sigma"]
        _require(isinstance(tab, list) and len(tab) == group.n,
                 "$.sigma", f"must be a {group.n} x {group.n} table")
        for i, row in enumerate(tab):
            _require(isinstance(row, list) and len(row) == group.n,
                     f"$.sigma[{i}]", f"must have {group.n} entries")
        sigma = PartialFactorSet.from_json(group, field, tab)
    action = None
    if "action" in obj and obj["action"] is not None:
        act = obj["action"]
        for key in ("algebra", "one_g", "theta"):
            _require(key in act, f"$.action.{key}", "missing")
        try:
            A = StructureAlgebra.from_json(field, act["algebra"], name="A")
        except Exception as exc:
            raise SchemaError(f"$.action.algebra: {exc}")
        rep = A.validate()
        _require(rep.ok, "$.action.algebra", f"not associative: {rep.violations[:2]}")
        one = [[field.parse(c) for c in v] for v in act["one_g"]]
        _require(len(one) == group.n, "$.action.one_g",
                 f"need {group.n} idempotents")
        for g, v in enumerate(one):
            _require(len(v) == A.dim, f"$.action.one_g[{g}]",
                     f"must have {A.dim} coordinates")
        theta = [[[field.parse(c) for c in row] for row in m]
                 for m in act["theta"]]
        _require(len(theta) == group.n, "$.action.theta",
                 f"need {group.n} maps")
        for g, m in enumerate(theta):
            _require(len(m) == A.dim and all(len(r) == A.dim for r in m),
                     f"$.action.theta[{g}]", f"must be {A.dim} x {A.dim}")
        upa = UnitalPartialAction(A, one, theta)
        _require(sigma is not None, "$.sigma",
                 "an explicit sigma is required with an action")
        action = TwistedPartialAction(upa, sigma)
    module = obj.get("module", "regular")
    if module != "regular":
        _require(isinstance(module, dict) and "dim" in module, "$.module",
                 "must be 'regular' or an object with 'dim'")
    options = dict(DEFAULT_OPTIONS)
    options.update(obj.get("options", {}))
    spec_name = name or obj.get("name", "problem")
    return ProblemSpec(spec_name, field, group, sigma, action, module,
                       options, obj)


def parse_spec_file(path):
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})")
    return parse_spec(obj, name=obj.get("name",
                                        os.path.splitext(os.path.basename(path))[0]))


def _parse_module(spec, lam):
    K = spec.field
    obj = spec.module
    dim = obj["dim"]
    labels = lam.algebra.labels

    def actions_from(dct, side):
        given = {}
        for label, mat in dct.items():
            if label not in labels:
                raise SchemaError(f"$.module.{side}: unknown basis label "
                                  f"{label!r} (have {labels})")
            given[labels.index(label)] = [[K.parse(c) for c in row]
                                          for row in mat]
        return module_from_generator_actions(lam.algebra, dim, given,
                                             side=side)

    left = right = None
    if "left" in obj:
        left = actions_from(obj["left"], "left").left
    if "right" in obj:
        right = actions_from(obj["right"], "right").right
    mod = ModuleData(lam.algebra, dim, left=left, right=right, name="M")
    mod.validate().raise_if_failed()
    return mod


def build_instance(spec):
    """A fully validated Instance from a parsed ProblemSpec."""
    inst = Instance(spec.name, spec.field, spec.group, sigma=spec.sigma,
                    theta=spec.action, module=None,
                    monoid_limit=spec.options.get("monoid_limit", 512))
    if spec.module != "regular":
        inst.M = _parse_module(spec, inst.lam)
        inst.M.validate().raise_if_failed()
    return inst


def fixture_dir():
    return os.path.join(os.path.dirname(__file__), "fixtures")


def bundled_fixtures():
    d = fixture_dir()
    return sorted(f for f in os.listdir(d) if f.endswith(".json"))


def load_fixture(name):
    path = os.path.join(fixture_dir(), name)
    return parse_spec_file(path)
