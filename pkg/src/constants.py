"""
Defaults and fixed parameters for quantum covering group computations.

This file collects the sweep bounds, suite identifiers and CLI defaults used
across the package. Values mirror the acceptance sweeps documented in
SPEC_FULL.md so that `all` and the tests run the same instances.
"""

# Root-of-unity setup
ELL_PRIME_CHOICES = ("default", "ell", "two_ell")   # ℓ′ = 2ℓ (default), ℓ (odd ℓ only), 2ℓ
PI_COMPONENTS = (1, -1)                             # π-components, in report order
CONDUCTOR_BASE = 4                                  # N = lcm(ℓ′, 4) so that √−1 ∈ ℚ(ζ_N)

# Identity sweep bounds (qpicalc)
DEFAULT_N_RANGE = 40        # |n| ≤ 40 for binomial sweeps
DEFAULT_T_RANGE = 40        # 0 ≤ t ≤ 40
DEFAULT_B_RANGE = 10        # 0 ≤ b ≤ 10 for factorial ratios
VQ_RANGE = 12               # n, t ≤ 12 for the v-identification suite
POSITIVITY_RANGE = 10       # n ≤ 10 for the positivity suite
CLASSICAL_RANGE = 12        # 0 ≤ n ≤ a ≤ 12 at ℓ = 1
DIAMOND_MULTIPLE = 8        # |n| ≤ 8ℓ_i in the diamond-binomial suite

# Suite identifiers
SUITE_BINOMIAL_VANISHING = "binomial-vanishing"          # binom(n,t) = 0 for ℓ | n, ℓ ∤ t
SUITE_BINOMIAL_MULTIPLE = "binomial-multiple"            # binom(ℓn₁, ℓt₁) closed form
SUITE_BINOMIAL_FACTORIZATION = "binomial-factorization"  # n = n₀ + ℓn₁ splitting
SUITE_SIGN_POWER = "sign-power"                          # v^{ℓ²+ℓ} = (−1)^{ℓ+1}
SUITE_FACTORIAL_RATIO = "factorial-ratio"                # [ℓb]!/([ℓ]!)^b
SUITE_ALTERNATING_SUM = "alternating-sum"                # 0 ≤ r ≤ a < ℓ alternating sum
SUITE_DIAMOND_BINOMIAL = "diamond-binomial"              # binomials at q̃_i vs q̃_i⋄
SUITE_V_IDENTIFICATION = "v-identification"              # [n]_{q,π} = √π^{n−1}[n]_v
SUITE_ORDER = "order"                                    # v^{2ℓ} = 1 and v^{2t} ≠ 1
SUITE_POSITIVITY = "positivity"                          # coefficients in ℕ[q^{±1}, π]
SUITE_CLASSICAL_LIMIT = "classical-limit"                # ℓ = 1 recovers C(a, n)

SPECIALIZED_SUITES = (
    SUITE_BINOMIAL_VANISHING,
    SUITE_BINOMIAL_MULTIPLE,
    SUITE_BINOMIAL_FACTORIZATION,
    SUITE_SIGN_POWER,
    SUITE_FACTORIAL_RATIO,
    SUITE_ALTERNATING_SUM,
    SUITE_ORDER,
)
GENERIC_SUITES = (SUITE_V_IDENTIFICATION, SUITE_POSITIVITY)
ALL_SUITES = SPECIALIZED_SUITES + GENERIC_SUITES + (SUITE_DIAMOND_BINOMIAL, SUITE_CLASSICAL_LIMIT)

# Algebra computations
DEFAULT_MAX_DEGREE = 6          # total degree bound for dims/frobenius sweeps
KOSTANT_MAX_DEGREE = 10         # dimension oracle agreement bound
HOMOMORPHISM_MAX_DEGREE = 8     # Fr/Fr′ homomorphism sweep bound
SPAN_DEGREE_CAP = 64            # hard stop for "until the layer vanishes" span growth
ASSOCIATIVITY_TRIPLES = 200     # random U̇ generator triples
DEFAULT_SEED = 0                # seed for every randomized sweep

# Weight windows for U̇ sweeps
COPRODUCT_WINDOW = 1            # μ₁ sweeps 2·WINDOW − 1 periods of 2ℓ̃ centred on the base period

# CLI
OUTPUT_FORMATS = ("json", "csv", "text")
LATTICES = ("weight", "root")
COMMANDS = ("verify-qpi", "datum", "dims", "frobenius", "udot", "smallu", "all")

EXIT_OK = 0                 # every executed check passed
EXIT_FAILURE = 1            # at least one check failed
EXIT_USAGE = 2              # bad flags or a rejected datum/assumption
EXIT_INTEGRALITY = 3        # integral-form violation (implementation bug signal)

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
