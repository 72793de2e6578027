"""Single-cell mutations of fixture records."""

import copy


def _other(label):
    """An element label naming a different element of A2."""
    return "e" if label not in ("e", "") else "s"


def mutations(rec):
    """Every single-cell change of a computable record."""
    kind = rec.get("kind")
    if "module" in rec:
        for j, e in enumerate(rec["entries"]):
            for key, delta in (("mult", 1), ("mult", -1), ("deg", 1)):
                m = copy.deepcopy(rec)
                m["entries"][j][key] += delta
                yield m
            m = copy.deepcopy(rec)
            m["entries"][j]["w"] = _other(e["w"])
            yield m
    elif kind == "row":
        for j in range(len(rec["values"])):
            for delta in (1, -1):
                m = copy.deepcopy(rec)
                m["values"][j] += delta
                yield m
    elif kind == "grid":
        for a, row in enumerate(rec["rows"]):
            for b, v in enumerate(row):
                for delta in (1, -1):
                    if v + delta >= 0:
                        m = copy.deepcopy(rec)
                        m["rows"][a][b] += delta
                        yield m
    elif kind == "set":
        for j, v in enumerate(rec["values"]):
            m = copy.deepcopy(rec)
            m["values"][j] = _other(v)
            yield m
        m = copy.deepcopy(rec)
        m["values"] = m["values"][:-1]
        yield m
    elif kind == "coresolution":
        for i, comp in enumerate(rec["positions"]):
            for j in range(len(comp)):
                m = copy.deepcopy(rec)
                m["positions"][i][j] = _other(comp[j])
                yield m
            m = copy.deepcopy(rec)
            m["positions"][i] = comp + comp[:1]
            yield m
