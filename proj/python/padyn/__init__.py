"""p-adic periodic points of polynomial maps.

Thin wrappers over the command line: every call returns the parsed JSON
report, with the assertion ledger under "assertions".
"""

import json

from ._padyn import DYNATOMIC_CAP, dynatomic_degree, mobius, run

__all__ = [
    "PadynError",
    "DYNATOMIC_CAP",
    "classify",
    "command",
    "dynatomic",
    "dynatomic_degree",
    "mobius",
    "oracle",
    "periodic",
    "run",
    "verify_bounds",
]


class PadynError(Exception):
    """A usage or input error; `kind` is the error name, e.g. NotIntegralAt2."""

    def __init__(self, kind, message, code):
        super().__init__(message)
        self.kind = kind
        self.code = code


def _flag(name, value):
    if value is None or value is False:
        return []
    if value is True:
        return [f"--{name}"]
    if isinstance(value, (list, tuple)):
        value = ",".join(str(v) for v in value)
    return [f"--{name}", str(value)]


def command(name, precision=None, seed=None, **options):
    """Run a subcommand with --format json; options map to --flags."""
    args = ["--format", "json"] + _flag("precision", precision) + _flag("seed", seed) + [name]
    for key, value in options.items():
        args += _flag(key.replace("_", "-"), value)
    code, out, err = run(args)
    try:
        report = json.loads(out)
    except json.JSONDecodeError:
        raise PadynError("UsageError", err.strip(), code) from None
    if "error" in report:
        raise PadynError(report["error"]["kind"], report["error"]["message"], code)
    return report


def periodic(poly, p=2, f=1, e=1, c=None, **kw):
    return command("periodic", poly=poly, p=p, f=f, e=e, c=c, **kw)


def dynatomic(poly, n=1, symbolic_c=False, verify_mobius=None, c=None, **kw):
    return command("dynatomic", poly=poly, n=n, symbolic_c=symbolic_c, verify_mobius=verify_mobius, c=c, **kw)


def classify(delta, c, portrait=False, other_prime=False, **kw):
    return command("classify", delta=delta, c=c, portrait=portrait, other_prime=other_prime, **kw)


def oracle(poly, p=2, f=1, e=1, levels=3, c=None, **kw):
    return command("oracle", poly=poly, p=p, f=f, e=e, levels=levels, c=c, **kw)


def verify_bounds(suite=None, samples=None, **kw):
    return command("verify-bounds", suite=suite, samples=samples, **kw)
