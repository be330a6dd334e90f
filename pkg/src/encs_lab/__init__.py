"""Decision support for LLM response suggestions in customer service.

Computes the expected net cost savings (ENCS) of showing model-generated
response suggestions to support agents, prices inference (self-hosted GPUs
or metered APIs), extrapolates usability from perplexity, summarizes rater
annotations, and finds the break-even volume of a build investment. Ships a
scenario file format with named presets, a CLI, and a stateless HTTP API.
"""

from .breakeven import (BreakEvenResult, LaborComparison, RndCost,
                        amortized_build_per_month, assisted_labor_comparison,
                        break_even_curve, break_even_result,
                        messages_to_break_even, time_to_break_even)
from .core_cost import (ActionSavings, ActionTimings, AgentEconomics, EncsResult,
                        SimulationResult, UsageDistribution, annualize,
                        average_assisted_time, encs, encs_simple,
                        per_action_savings, simulate_encs)
from .errors import (DegenerateDataError, EncsLabError, InvalidInputError,
                     NeverBreaksEvenError, SimplexViolationError)
from .inference_cost import (ApiPricing, GpuPricing, MessageShape, ServingProfile,
                             api_cost_per_message, cost_per_message_with_overheads,
                             gpu_hourly_rate, self_hosted_cost_per_inference,
                             tokens_per_message)
from .presets import load_presets
from .report import Report, emit_report, report_payload
from .scenario import (ConversationMeta, FilterResult, Scenario, dataset_filter,
                       evaluate_scenario, load_preset_scenario, load_scenario,
                       save_scenario, scenario_from_dict, scenario_to_dict)
from .usability import (IqrResult, LinearModel, PerplexitySample, RuCoefficients,
                        RuPrediction, TokenProbSequence, fit_ru_models, iqr_filter,
                        mean_perplexity, ols_fit, perplexity, predict_ru,
                        predict_ru_set)

__version__ = "0.1.0"
