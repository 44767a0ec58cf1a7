"""Shape-dispatched Arthur-type rules (filled in below)."""

from .classify import Verdict


def decide(ld, cusp, crit):
    return Verdict("Unclassified", crit, "no-rule")
