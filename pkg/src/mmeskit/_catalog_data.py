"""Sign patterns and exact target values for the named catalog states.

The strings list one sign per computational basis label, in ascending
label order (qubit-1-major binary strings).  Each entry's potential is
asserted exactly by the catalog self-check before any state is handed
out, so a transcription error here cannot go unnoticed.
"""

from fractions import Fraction

# n=4 real uniform state attaining the global sign-space minimum 1/3.
FOUR_BEST_SIGNS = "------++-+-++--+"

# n=5 real uniform perfect state, potential exactly 1/4.
FIVE_PERFECT_SIGNS = "+++++--++--+++++" "++--+-+--+-+--++"

# n=6 real uniform perfect state, potential exactly 1/8.
SIX_PERFECT_SIGNS = (
    "++-+---+"
    "--+----+"
    "-+---+++"
    "-+--+---"
    "+----+--"
    "+---+-++"
    "+++-++-+"
    "---+++-+"
)

SIGN_TARGETS = {
    "four_best": (FOUR_BEST_SIGNS, Fraction(1, 3)),
    "five_perfect": (FIVE_PERFECT_SIGNS, Fraction(1, 4)),
    "six_perfect": (SIX_PERFECT_SIGNS, Fraction(1, 8)),
}
