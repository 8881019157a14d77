"""Exact inference and bias auditing for discrete causal Bayesian networks."""

from .causal import (BiasAuditReport, Intervention, PathReport, apply_do,
                     audit_bias, classify_paths, d_separated,
                     interventional_query)
from .core import (Cpt, DiscreteVariable, Evidence, Network, NetworkError,
                   ValidationReport, Violation, topological_order,
                   validate_network)
from .inference import (Factor, QueryResult, elimination_order, enumerate_joint,
                        factor_from_cpt, factor_marginalize, factor_product,
                        factor_reduce, prior_marginals, query_posterior)
from .model_io import (ParseError, RecordTable, Scenario, cpt_from_counts,
                       parse_model, parse_scenario, read_records,
                       serialize_model)
from .models import (FIXTURE_BUILDERS, GoldenExpectation, build_berkson_dating,
                     build_contact_model, build_realistic_smoking,
                     build_simple_smoking, build_stress_model, golden_table)

__version__ = "0.1.0"

__all__ = [
    "BiasAuditReport", "Cpt", "DiscreteVariable", "Evidence", "Factor",
    "FIXTURE_BUILDERS", "GoldenExpectation", "Intervention", "Network",
    "NetworkError", "ParseError", "PathReport", "QueryResult", "RecordTable",
    "Scenario", "ValidationReport", "Violation", "apply_do", "audit_bias",
    "build_berkson_dating", "build_contact_model", "build_realistic_smoking",
    "build_simple_smoking", "build_stress_model", "classify_paths",
    "cpt_from_counts", "d_separated", "elimination_order", "enumerate_joint",
    "factor_from_cpt", "factor_marginalize", "factor_product", "factor_reduce",
    "golden_table", "interventional_query", "parse_model", "parse_scenario",
    "prior_marginals", "query_posterior", "read_records", "serialize_model",
    "topological_order", "validate_network",
]
