"""Per-message generation cost, self-hosted or API.

Self-hosted: a GPU billed monthly for a fixed number of hours prices one
inference by serial occupancy, hourly_rate / 3600 * latency. Throughput is
carried as informational metadata only; concurrent request batching is out
of scope for these estimates.

API: a per-1000-token price times the message's token count. Token counts
derive from character counts at a fixed characters-per-token ratio when not
measured directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidInputError

SECONDS_PER_HOUR = 3600.0

DEFAULT_CHARS_PER_TOKEN = 4.0

# When both a character count and an explicit token count are supplied they
# must agree to this relative slack.
TOKEN_CONSISTENCY_RTOL = 0.01


@dataclass(frozen=True)
class GpuPricing:
    """Rental price of one GPU: monthly bill and billed hours per month."""

    monthly_cost: float
    billed_hours_per_month: float

    def __post_init__(self):
        if not (self.monthly_cost >= 0):
            raise InvalidInputError(f"monthly_cost must be >= 0, got {self.monthly_cost}")
        if not (self.billed_hours_per_month > 0):
            raise InvalidInputError(
                f"billed_hours_per_month must be > 0, got {self.billed_hours_per_month}")


@dataclass(frozen=True)
class ServingProfile:
    """One model served on one GPU: measured latency, optional throughput."""

    gpu: GpuPricing
    latency_seconds: float
    throughput_per_second: float | None = None  # informational only

    def __post_init__(self):
        if not (self.latency_seconds >= 0):
            raise InvalidInputError(
                f"latency_seconds must be >= 0, got {self.latency_seconds}")
        if self.throughput_per_second is not None and not (self.throughput_per_second > 0):
            raise InvalidInputError(
                f"throughput_per_second must be > 0 when given, "
                f"got {self.throughput_per_second}")


@dataclass(frozen=True)
class ApiPricing:
    """Metered API price in USD per 1000 tokens."""

    usd_per_1k_tokens: float
    note: str = ""

    def __post_init__(self):
        if not (self.usd_per_1k_tokens >= 0):
            raise InvalidInputError(
                f"usd_per_1k_tokens must be >= 0, got {self.usd_per_1k_tokens}")


@dataclass(frozen=True)
class MessageShape:
    """Token count of a typical message, given directly or via characters.

    At least one of avg_chars_per_message / tokens_per_message is required;
    when both are present they must agree at the chars_per_token ratio within
    1% or the shape is rejected as inconsistent.
    """

    avg_chars_per_message: float | None = None
    chars_per_token: float = DEFAULT_CHARS_PER_TOKEN
    tokens_per_message: float | None = None

    def __post_init__(self):
        if not (self.chars_per_token > 0):
            raise InvalidInputError(
                f"chars_per_token must be > 0, got {self.chars_per_token}")
        if self.avg_chars_per_message is None and self.tokens_per_message is None:
            raise InvalidInputError(
                "one of avg_chars_per_message or tokens_per_message is required")
        for name in ("avg_chars_per_message", "tokens_per_message"):
            v = getattr(self, name)
            if v is not None and not (v >= 0):
                raise InvalidInputError(f"{name} must be >= 0, got {v}")
        if self.avg_chars_per_message is not None and self.tokens_per_message is not None:
            derived = self.avg_chars_per_message / self.chars_per_token
            if not math.isclose(derived, self.tokens_per_message,
                                rel_tol=TOKEN_CONSISTENCY_RTOL):
                raise InvalidInputError(
                    f"tokens_per_message {self.tokens_per_message} disagrees with "
                    f"{self.avg_chars_per_message} chars at {self.chars_per_token} "
                    f"chars/token (derived {derived:.3f})")


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------


def gpu_hourly_rate(pricing: GpuPricing) -> float:
    """USD per GPU hour, monthly cost over billed hours."""
    return pricing.monthly_cost / pricing.billed_hours_per_month


def self_hosted_cost_per_inference(profile: ServingProfile) -> float:
    """USD per inference by serial GPU occupancy:
    hourly rate / 3600 * latency in seconds."""
    return gpu_hourly_rate(profile.gpu) / SECONDS_PER_HOUR * profile.latency_seconds


def tokens_per_message(shape: MessageShape) -> float:
    """Tokens in a typical message; explicit count wins over the
    character-derived one."""
    if shape.tokens_per_message is not None:
        return shape.tokens_per_message
    return shape.avg_chars_per_message / shape.chars_per_token


def api_cost_per_message(pricing: ApiPricing, tokens: float) -> float:
    """USD to generate `tokens` tokens at the metered price."""
    if not (tokens >= 0):
        raise InvalidInputError(f"tokens must be >= 0, got {tokens}")
    return pricing.usd_per_1k_tokens * tokens / 1000.0


def cost_per_message_with_overheads(monthly_usage: float, monthly_overhead: float,
                                    messages_per_month: float) -> float:
    """Fully-loaded per-message cost: (usage + overhead) / message volume."""
    if not (messages_per_month > 0):
        raise InvalidInputError(
            f"messages_per_month must be > 0, got {messages_per_month}")
    if not (monthly_usage >= 0):
        raise InvalidInputError(f"monthly_usage must be >= 0, got {monthly_usage}")
    if not (monthly_overhead >= 0):
        raise InvalidInputError(f"monthly_overhead must be >= 0, got {monthly_overhead}")
    return (monthly_usage + monthly_overhead) / messages_per_month
