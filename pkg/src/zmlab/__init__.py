"""Cross-entropy estimation between symbol streams by sequence parsing.

The package splits into small layers: core (alphabets and sequences),
matcher (substring index over a reference), parser (the parsing rules and
estimators), sources (stationary models with exact log-probabilities),
infotheory (rates, pressure curves, diagnostics), and harness (seeded
experiments with CSV output).
"""

from .core import (Alphabet, ParseKind, ParseResult, Seq, alphabet,
                   seq_from_text, seq_to_text)
from .errors import ZmlabError
from .harness import (ExperimentConfig, EstimateRecord, config_from_dict,
                      config_from_file, run_experiment)
from .infotheory import (NUMERIC, NdVerdict, PressureCurve, SmbSeries,
                         cross_entropy_rate, entropy_rate, nd_diagnostic,
                         pressure_curve, pressure_curves, se_diagnostic,
                         sided_derivatives_at_zero, smb_series)
from .matcher import (SubstringIndex, build_index, match_length,
                      waiting_time)
from .parser import (Estimate, EstimatorKind, estimate, parse_mzm,
                     parse_zm, validate_parse)
from .sources import (Bernoulli, CountableHmm, GammaSpec, Hmm, Markov, Pmp,
                      RngSpec, countable_hmm_build, hmm_from_parts,
                      log_marginal, log_marginal_prefixes,
                      markov_from_transition, model_from_dict,
                      model_to_dict, pmp_from_hmm, sample, sample_batch,
                      stationary_vector)

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "Seq", "ParseKind", "ParseResult", "alphabet",
    "seq_from_text", "seq_to_text", "ZmlabError",
    "SubstringIndex", "build_index", "waiting_time", "match_length",
    "Estimate", "EstimatorKind", "estimate", "parse_mzm", "parse_zm",
    "validate_parse",
    "Bernoulli", "Markov", "Hmm", "Pmp", "CountableHmm", "GammaSpec",
    "RngSpec", "countable_hmm_build", "hmm_from_parts",
    "markov_from_transition", "pmp_from_hmm", "stationary_vector",
    "sample", "sample_batch", "log_marginal", "log_marginal_prefixes",
    "model_from_dict", "model_to_dict",
    "NUMERIC", "entropy_rate", "cross_entropy_rate", "smb_series",
    "SmbSeries", "PressureCurve", "pressure_curve", "pressure_curves",
    "sided_derivatives_at_zero", "NdVerdict", "nd_diagnostic",
    "se_diagnostic",
    "ExperimentConfig", "EstimateRecord", "config_from_dict",
    "config_from_file", "run_experiment",
]
