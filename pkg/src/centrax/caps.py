"""Size caps shared by the enumeration routines.

``CENTRAX_CAP`` overrides the defaults. It is either a bare integer, which
sets the congruence-enumeration cap, or a comma list such as
``congruences=16,product=128``.
"""

import os
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Caps:
    carrier: int = 16
    product: int = 64
    congruences: int = 12
    power: int = 2**20
    chain_length: int = 64
    term_depth: int = 16

    @classmethod
    def from_env(cls, env=None):
        env = os.environ if env is None else env
        raw = env.get("CENTRAX_CAP", "").strip()
        if not raw:
            return cls()
        return cls().updated(raw)

    def updated(self, text):
        """Return a copy with overrides parsed from ``text``."""
        text = str(text).strip()
        if text.isdigit():
            return replace(self, congruences=int(text))
        known = {f.name for f in fields(self)}
        changes = {}
        for item in text.split(","):
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in known:
                raise ValueError(f"bad cap override {item!r}")
            changes[key] = int(value)
        return replace(self, **changes)


def resolve(caps):
    return Caps.from_env() if caps is None else caps
