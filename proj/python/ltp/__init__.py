"""Python access to the ltp library.

``run`` mirrors the command line: ``run("fg", "qk", p=3, k=1)`` returns the
parsed JSON document, or raises ``LtpError`` on a nonzero exit code.
"""

import json

from ._ltp import Field, JobConfig, deep_norm, log, mahler_weight, mult_by_pi, q_poly, r_level, run_job

__all__ = ["Field", "JobConfig", "LtpError", "deep_norm", "log", "mahler_weight", "mult_by_pi", "q_poly",
           "r_level", "run", "run_job"]


class LtpError(RuntimeError):
    def __init__(self, code, payload):
        super().__init__(payload)
        self.code = code
        self.payload = payload


def run(group, command, **options):
    cfg = JobConfig()
    cfg.group, cfg.command = group, command
    for key, value in options.items():
        if not hasattr(cfg, key):
            raise TypeError(f"unknown option {key!r}")
        setattr(cfg, key, value)
    code, out, err = run_job(cfg)
    if code != 0:
        raise LtpError(code, json.loads(out) if out.startswith("{") else err.strip() or out.strip())
    return json.loads(out) if out.startswith("{") else out.strip()
