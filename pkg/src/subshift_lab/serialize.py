"""File formats.

Parameter files (JSON):
    { "pi": {"0": "<word>", "1": "<word>"}, "mk": [ints], "nk": [ints],
      "repeat": int }
Words use digit strings for alphabets up to 10 symbols and comma-separated
integers beyond.  An optional "repeat" tiles the mk/nk arrays that many
times, giving periodic parameter sequences a compact spelling.

Factor-data files (JSON) describe a shift of finite type instead:
    { "sft": {"alphabet": int, "forbidden": ["<word>", ...]} }

Symbol files are whitespace-free digit strings or comma-separated integers.
"""

import json

from .errors import InvalidArgumentError
from .sadic import SadicParams
from .substitution import Substitution
from .words import render, word

SCHEMA_ID = "subshift-lab/report-v1"


def params_to_dict(p: SadicParams, repeat: int = 1) -> dict:
    return {
        "pi": {str(a): render(im) for a, im in enumerate(p.pi.images)},
        "mk": list(p.mk),
        "nk": list(p.nk),
        "repeat": repeat,
    }


def params_from_dict(d: dict) -> SadicParams:
    if "sft" in d:
        raise InvalidArgumentError("factor-data file given where generator params expected")
    try:
        images = tuple(word(d["pi"][str(a)]) for a in range(len(d["pi"])))
        repeat = int(d.get("repeat", 1))
        mk = tuple(d["mk"]) * repeat
        nk = tuple(d["nk"]) * repeat
    except (KeyError, TypeError) as e:
        raise InvalidArgumentError(f"malformed parameter file: {e}") from e
    if repeat < 1:
        raise InvalidArgumentError("repeat must be >= 1")
    return SadicParams(pi=Substitution(images), mk=mk, nk=nk)


def load_params(path) -> SadicParams:
    with open(path, "r", encoding="utf-8") as fh:
        return params_from_dict(json.load(fh))


def load_params_or_sft(path):
    """Returns ("params", SadicParams) or ("sft", (alphabet, forbidden))."""
    with open(path, "r", encoding="utf-8") as fh:
        d = json.load(fh)
    if "sft" in d:
        spec = d["sft"]
        forbidden = tuple(word(f) for f in spec.get("forbidden", []))
        return "sft", (int(spec["alphabet"]), forbidden)
    return "params", params_from_dict(d)


def save_params(p: SadicParams, path, repeat: int = 1):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(params_to_dict(p, repeat), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_symbols(path) -> bytes:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read().strip()
    if not text:
        raise InvalidArgumentError("empty symbol file")
    return word(text)


def report_envelope(command: str, data: dict) -> dict:
    return {"schema": SCHEMA_ID, "command": command, "data": data}


def dump_report(obj: dict) -> str:
    """Deterministic JSON rendering (sorted keys, newline-terminated)."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
