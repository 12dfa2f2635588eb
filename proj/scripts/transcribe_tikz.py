#!/usr/bin/env python3
"""Transcribe the TikZ figures of a LaTeX source into combinatorial data.

Two kinds of figure are recognised.

Tri-plane figures contain three panels of tangle strands drawn upward from an
axis at y = 0.  Each panel is converted into a braid word on 2b strands read
bottom to top, such that the panel is that braid followed by the standard caps
joining positions (1,2), (3,4), ...  Crossings are decided by drawing order:
the stroke painted later is in front.  A cap closing below other strands is
pushed up to the top of the picture in front of everything, which is an
isotopy, and each crossing of the pushed-up pair contributes two letters.

Move figures contain columns of panels, each panel a set of closed polygons
around punctures on a horizontal axis.  Each polygon becomes the cyclic list of
gaps it crosses, starting with a downward crossing.

Output is JSON on stdout (or --out).  Each letter is [k, left_over]: the
strands at positions k and k+1 swap and left_over tells whether the strand
coming from position k is in front.  Mapping this to a signed generator is a
choice of mirror, left to the consumer.
"""

import argparse
import ast
import json
import math
import operator
import re
import sys

CURVE_COLORS = {"red", "blue", "teal", "orange"}
STRAND_COLORS = {"red", "blue", "teal"}
BEZIER_SAMPLES = 48
TOL = 1e-6


class TranscriptionError(Exception):
    pass


# ---------------------------------------------------------------------------
# Arithmetic in coordinates


_BIN = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv}


def evaluate(expr, env):
    text = expr.strip()
    for name, value in sorted(env.items(), key=lambda kv: -len(kv[0])):
        text = text.replace("\\" + name, "(%r)" % value)
    text = text.replace("{", "(").replace("}", ")")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.BinOp) and type(node.op) in _BIN:
            return _BIN[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            fn = {"cos": lambda d: math.cos(math.radians(d)),
                  "sin": lambda d: math.sin(math.radians(d))}.get(node.func.id)
            if fn and len(node.args) == 1:
                return fn(ev(node.args[0]))
        raise TranscriptionError("unsupported expression: " + expr)

    return ev(ast.parse(text, mode="eval"))


def expand_list(text, env):
    """Expand a foreach list such as '2,4,...,14,17'."""
    items = [t.strip() for t in text.split(",") if t.strip()]
    out = []
    i = 0
    while i < len(items):
        if items[i] == "...":
            if len(out) < 2 or i + 1 >= len(items):
                raise TranscriptionError("bad progression: " + text)
            step = out[-1] - out[-2]
            stop = evaluate(items[i + 1], env)
            v = out[-1] + step
            while (step > 0 and v < stop - TOL) or (step < 0 and v > stop + TOL):
                out.append(v)
                v += step
            i += 1
            continue
        out.append(evaluate(items[i], env))
        i += 1
    return out


# ---------------------------------------------------------------------------
# Statement interpreter


def strip_comments(text):
    return re.sub(r"(?<!\\)%[^\n]*", "", text)


def matching(text, i, open_ch, close_ch):
    depth = 0
    for j in range(i, len(text)):
        if text[j] == open_ch:
            depth += 1
        elif text[j] == close_ch:
            depth -= 1
            if depth == 0:
                return j
    raise TranscriptionError("unbalanced " + open_ch)


def statement_end(text, i):
    depth = 0
    for j in range(i, len(text)):
        c = text[j]
        if c in "{[(":
            depth += 1
        elif c in "}])":
            depth -= 1
        elif c == ";" and depth == 0:
            return j
    raise TranscriptionError("unterminated statement")


class Stroke:
    def __init__(self, options, path, order):
        self.options = options
        self.path = path  # list of ("move"|"line"|"curve"|"rect"|"cycle", data)
        self.order = order
        opts = [o.strip() for o in options.split(",")]
        self.color = next((o for o in opts if o in CURVE_COLORS | {"white", "cyan", "magenta"}), "black")
        self.weight = next((o for o in opts if o in ("thin", "semithick", "thick", "very thick")), "")
        self.halo = any(o.startswith("line width") for o in opts)


def parse_path(text, env, shift):
    tokens = re.findall(
        r"\((?:[^()]|\([^()]*\))*\)|--|to\s*\[[^\]]*\]|to\b|rectangle|cycle|"
        r"node\s*(?:\[[^\]]*\])?\s*\{[^}]*\}|circle\s*(?:\[[^\]]*\])?|coordinate\s*\([^)]*\)",
        text)
    path = []
    pending = "move"
    pending_angles = None
    for tok in tokens:
        if tok.startswith("("):
            inner = tok[1:-1]
            if "," not in inner or inner.startswith("$"):
                continue
            xs, ys = split_top_comma(inner)
            p = (evaluate(xs, env) + shift[0], evaluate(ys, env) + shift[1])
            if pending == "curve":
                path.append(("curve", (p, pending_angles)))
            else:
                path.append((pending, p))
            pending = "move"
        elif tok == "--" or tok == "to":
            pending = "line"
        elif tok.startswith("to"):
            opts = dict(kv.split("=") for kv in tok[tok.index("[") + 1:-1].replace(" ", "").split(","))
            pending = "curve"
            pending_angles = (float(opts["out"]), float(opts["in"]))
        elif tok == "rectangle":
            pending = "rect"
        elif tok == "cycle":
            path.append(("cycle", None))
        elif tok.startswith("circle"):
            path.append(("circle", None))
    return path


def split_top_comma(text):
    depth = 0
    for i, c in enumerate(text):
        if c in "({":
            depth += 1
        elif c in ")}":
            depth -= 1
        elif c == "," and depth == 0:
            return text[:i], text[i + 1:]
    raise TranscriptionError("coordinate without comma: " + text)


def interpret(body, env=None, shift=(0.0, 0.0), strokes=None, fills=None):
    env = dict(env or {})
    strokes = [] if strokes is None else strokes
    fills = [] if fills is None else fills
    i = 0
    while i < len(body):
        if body[i].isspace():
            i += 1
            continue
        m = re.match(r"\\foreach\s*\\(\w+)\s*in\s*\{", body[i:])
        if m:
            var = m.group(1)
            lo = i + m.end() - 1
            hi = matching(body, lo, "{", "}")
            values = expand_list(body[lo + 1:hi], env)
            j = hi + 1
            while body[j].isspace():
                j += 1
            if body[j] == "{":
                k = matching(body, j, "{", "}")
                inner = body[j + 1:k]
                nxt = k + 1
            else:
                k = statement_end(body, j)
                inner = body[j:k + 1]
                nxt = k + 1
            for v in values:
                interpret(inner, {**env, var: v}, shift, strokes, fills)
            i = nxt
            continue
        m = re.match(r"\\begin\{scope\}\s*(\[[^\n]*?\])?", body[i:])
        if m:
            end = find_scope_end(body, i + m.end())
            opts = m.group(1) or ""
            sm = re.search(r"shift=\{\(([^)]*)\)\}", opts)
            sh = shift
            if sm:
                xs, ys = split_top_comma(sm.group(1))
                sh = (shift[0] + evaluate(xs, env), shift[1] + evaluate(ys, env))
            interpret(body[i + m.end():end], env, sh, strokes, fills)
            i = end + len("\\end{scope}")
            continue
        m = re.match(r"\\(draw|fill|node|coordinate|path)\b", body[i:])
        if m:
            k = statement_end(body, i)
            stmt = body[i + m.end():k]
            cmd = m.group(1)
            options = ""
            s = stmt.lstrip()
            if s.startswith("["):
                e = matching(s, 0, "[", "]")
                options, s = s[1:e], s[e + 1:]
            if cmd == "draw":
                strokes.append(Stroke(options, parse_path(s, env, shift), len(strokes)))
            elif cmd == "fill":
                path = parse_path(s, env, shift)
                if options == "" and path and path[0][0] == "move" and any(p[0] == "circle" for p in path):
                    fills.append(path[0][1])
            i = k + 1
            continue
        m = re.match(r"\\[A-Za-z]+", body[i:])
        i += m.end() if m else 1
    return strokes, fills


def find_scope_end(body, start):
    depth = 1
    for m in re.finditer(r"\\(begin|end)\{scope\}", body[start:]):
        depth += 1 if m.group(1) == "begin" else -1
        if depth == 0:
            return start + m.start()
    raise TranscriptionError("unterminated scope")


# ---------------------------------------------------------------------------
# Geometry


def bezier(p0, p3, out_deg, in_deg):
    d = math.dist(p0, p3) * 0.3915
    p1 = (p0[0] + d * math.cos(math.radians(out_deg)), p0[1] + d * math.sin(math.radians(out_deg)))
    p2 = (p3[0] + d * math.cos(math.radians(in_deg)), p3[1] + d * math.sin(math.radians(in_deg)))
    pts = []
    for s in range(1, BEZIER_SAMPLES + 1):
        t = s / BEZIER_SAMPLES
        u = 1 - t
        pts.append((u ** 3 * p0[0] + 3 * u * u * t * p1[0] + 3 * u * t * t * p2[0] + t ** 3 * p3[0],
                    u ** 3 * p0[1] + 3 * u * u * t * p1[1] + 3 * u * t * t * p2[1] + t ** 3 * p3[1]))
    return pts


def polyline(stroke):
    """Open polyline for a stroke, or a closed polygon for rectangles and cycles."""
    pts = []
    closed = False
    for kind, data in stroke.path:
        if kind == "move":
            if pts:
                raise TranscriptionError("stroke with several subpaths")
            pts.append(data)
        elif kind == "line":
            pts.append(data)
        elif kind == "curve":
            p, (a_out, a_in) = data
            pts.extend(bezier(pts[-1], p, a_out, a_in))
        elif kind == "rect":
            (x0, y0), (x1, y1) = pts[-1], data
            pts = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
            closed = True
        elif kind == "cycle":
            closed = True
        elif kind == "circle":
            raise TranscriptionError("circle in a stroke")
    if closed and len(pts) > 1 and math.dist(pts[0], pts[-1]) < TOL:
        pts.pop()
    return pts, closed


def seg_intersection(p, p2, q, q2):
    r = (p2[0] - p[0], p2[1] - p[1])
    s = (q2[0] - q[0], q2[1] - q[1])
    den = r[0] * s[1] - r[1] * s[0]
    if abs(den) < 1e-15:
        return None
    w = (q[0] - p[0], q[1] - p[1])
    t = (w[0] * s[1] - w[1] * s[0]) / den
    u = (w[0] * r[1] - w[1] * r[0]) / den
    if 0 <= t < 1 and 0 <= u < 1:
        return t, u
    return None


# ---------------------------------------------------------------------------
# Closed curves around punctures


def curve_word(points, punctures_x, axis_y):
    xs = sorted(punctures_x)
    n = len(xs)
    crossings = []
    m = len(points)
    for i in range(m):
        a, b = points[i], points[(i + 1) % m]
        above_a, above_b = a[1] >= axis_y, b[1] >= axis_y
        if above_a == above_b:
            continue
        t = (axis_y - a[1]) / (b[1] - a[1])
        x = a[0] + t * (b[0] - a[0])
        if any(abs(x - px) < TOL for px in xs):
            raise TranscriptionError("curve passes through a puncture")
        gap = sum(1 for px in xs if px < x) % n
        crossings.append((gap, above_a))
    if not crossings:
        raise TranscriptionError("curve misses the axis")
    start = next(i for i, c in enumerate(crossings) if c[1])
    rot = crossings[start:] + crossings[:start]
    for i, (_, down) in enumerate(rot):
        if down != (i % 2 == 0):
            raise TranscriptionError("crossings do not alternate")
    return [g for g, _ in rot]


def transcribe_curve_panel(strokes, fills):
    if not fills:
        raise TranscriptionError("panel without punctures")
    axis_y = fills[0][1]
    if any(abs(f[1] - axis_y) > TOL for f in fills):
        raise TranscriptionError("punctures off a single axis")
    px = sorted(f[0] for f in fills)
    curves = []
    for s in strokes:
        if s.color not in CURVE_COLORS or s.halo:
            continue
        pts, closed = polyline(s)
        if not closed:
            raise TranscriptionError("open curve stroke")
        curves.append({"color": s.color, "word": curve_word(pts, px, axis_y)})
    return {"punctures": len(px), "curves": curves}


# ---------------------------------------------------------------------------
# Tangle panels


class Arc:
    def __init__(self, points, orders):
        self.points = points  # from one endpoint on the axis to the other
        self.orders = orders  # orders[i]: draw order of segment i


def join_pieces(pieces):
    """Chain stroke pieces sharing endpoints into arcs with both ends on y = 0."""
    pieces = [(list(p), [o] * (len(p) - 1)) for p, o in pieces]
    arcs = []
    while pieces:
        start = next((k for k, (p, _) in enumerate(pieces)
                      if abs(p[0][1]) < TOL or abs(p[-1][1]) < TOL), None)
        if start is None:
            raise TranscriptionError("strand pieces not anchored on the axis")
        pts, ords = pieces.pop(start)
        if abs(pts[0][1]) >= TOL:
            pts.reverse()
            ords.reverse()
        while abs(pts[-1][1]) >= TOL or len(pts) < 2:
            end = pts[-1]
            k = next((k for k, (p, _) in enumerate(pieces)
                      if math.dist(p[0], end) < 1e-4 or math.dist(p[-1], end) < 1e-4), None)
            if k is None:
                raise TranscriptionError("dangling strand end at %r" % (end,))
            p, o = pieces.pop(k)
            if math.dist(p[0], end) >= 1e-4:
                p, o = p[::-1], o[::-1]
            pts.extend(p[1:])
            ords.extend(o)
        arcs.append(Arc(pts, ords))
    return arcs


def perturb(arc, index):
    """Shift the arc sideways by a unique amount and tilt its plateau so the
    maximum is a single point."""
    primes = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    eta = 1e-3 * math.sqrt(primes[index % len(primes)])
    ys = [p[1] for p in arc.points]
    top = max(ys)
    plateau = [i for i, y in enumerate(ys) if y > top - 1e-9]
    length = [0.0]
    for a, b in zip(arc.points, arc.points[1:]):
        length.append(length[-1] + math.dist(a, b))
    s_top = 0.5 * (length[plateau[0]] + length[plateau[-1]])
    kappa = 1e-6
    pts = []
    for p, s in zip(arc.points, length):
        pts.append((p[0] + eta, p[1] - kappa * abs(s - s_top)))
    # Insert the apex as an explicit vertex.
    k = next(i for i in range(len(length) - 1) if length[i] <= s_top <= length[i + 1])
    if length[k + 1] - length[k] > 0:
        t = (s_top - length[k]) / (length[k + 1] - length[k])
        a, b = arc.points[k], arc.points[k + 1]
        apex = (a[0] + t * (b[0] - a[0]) + eta, a[1] + t * (b[1] - a[1]))
        if 0 < t < 1:
            pts.insert(k + 1, apex)
            arc.orders.insert(k + 1, arc.orders[k])
            k += 1
        elif t >= 1:
            k += 1
    arc.points = pts
    apex_index = k
    for i in range(len(pts) - 1):
        up = i < apex_index
        dy = pts[i + 1][1] - pts[i][1]
        if (up and dy <= 0) or (not up and dy >= 0):
            raise TranscriptionError("strand is not a single cap (local extremum at %r)" % (pts[i + 1],))
    return apex_index


def transcribe_tangle_panel(strokes, x_range):
    lo, hi = x_range
    pieces = []
    for s in strokes:
        if s.color not in STRAND_COLORS or s.halo or s.weight != "very thick":
            continue
        pts, closed = polyline(s)
        if closed:
            raise TranscriptionError("closed strand")
        if all(lo - TOL <= p[0] <= hi + TOL for p in pts):
            pieces.append((pts, s.order))
    arcs = join_pieces(pieces)
    arcs.sort(key=lambda a: min(a.points[0][0], a.points[-1][0]))
    ends = sorted(x for a in arcs for x in (a.points[0][0], a.points[-1][0]))
    color = next(s.color for s in strokes if s.color in STRAND_COLORS and lo <= polyline(s)[0][0][0] <= hi)
    apex = [perturb(a, i) for i, a in enumerate(arcs)]

    # Legs: leg 2a runs from the first endpoint of arc a up to its apex, leg
    # 2a+1 from the second endpoint.  Virtual legs 2a and 2a+1 continue them
    # above the apex as vertical rays just left and right of it.
    delta = 1e-6
    legs = {}
    for a, arc in enumerate(arcs):
        up = arc.points[:apex[a] + 1]
        down = arc.points[apex[a]:][::-1]
        up_orders = arc.orders[:apex[a]]
        down_orders = arc.orders[apex[a]:][::-1]
        legs[2 * a] = (up, up_orders)
        legs[2 * a + 1] = (down, down_orders)
    tops = {}
    for a, arc in enumerate(arcs):
        ax, ay = arc.points[apex[a]]
        left, right = (2 * a, 2 * a + 1) if legs[2 * a][0][-2][0] < legs[2 * a + 1][0][-2][0] else (2 * a + 1, 2 * a)
        tops[a] = (ax, ay, left, right)

    events = []  # (y, kind, data)
    leg_ids = sorted(legs)
    for i in range(len(leg_ids)):
        for j in range(i + 1, len(leg_ids)):
            la, lb = leg_ids[i], leg_ids[j]
            pa, oa = legs[la]
            pb, ob = legs[lb]
            for u in range(len(pa) - 1):
                ya0, ya1 = pa[u][1], pa[u + 1][1]
                for v in range(len(pb) - 1):
                    if max(pb[v][1], pb[v + 1][1]) < ya0 or min(pb[v][1], pb[v + 1][1]) > ya1:
                        continue
                    hit = seg_intersection(pa[u], pa[u + 1], pb[v], pb[v + 1])
                    if hit:
                        y = pa[u][1] + hit[0] * (ya1 - ya0)
                        if la // 2 == lb // 2 and y > pa[-1][1] - 1e-7:
                            continue  # the two legs of a cap meet at its apex
                        over = la if oa[u] > ob[v] else lb
                        events.append((y, "real", (la, lb, over)))
    for a, (ax, ay, left, right) in tops.items():
        events.append((ay, "apex", a))
        for leg, x in ((("v", left), ax - delta), (("v", right), ax + delta)):
            for lid in leg_ids:
                if lid // 2 == a:
                    continue
                pts, _ = legs[lid]
                for u in range(len(pts) - 1):
                    (x0, y0), (x1, y1) = pts[u], pts[u + 1]
                    if (x0 - x) * (x1 - x) < 0 or x0 == x:
                        if x1 == x0:
                            continue
                        y = y0 + (x - x0) / (x1 - x0) * (y1 - y0)
                        if y > ay:
                            events.append((y, "virtual", (lid, leg)))
    events.sort(key=lambda e: (e[0], 0 if e[1] == "apex" else 1))

    order = sorted(leg_ids, key=lambda l: legs[l][0][0][0])
    letters = []

    def swap(s1, s2, front):
        i1, i2 = order.index(s1), order.index(s2)
        if abs(i1 - i2) != 1:
            raise TranscriptionError("crossing strands are not adjacent at letter %d: %r %r in %r"
                                     % (len(letters) + 1, s1, s2, order))
        k = min(i1, i2)
        letters.append([k + 1, order[k] == front])
        order[i1], order[i2] = order[i2], order[i1]

    for y, kind, data in events:
        if kind == "real":
            la, lb, over = data
            swap(la, lb, over)
        elif kind == "virtual":
            lid, vleg = data
            swap(lid, vleg, vleg)
        else:
            a = data
            _, _, left, right = tops[a]
            i1, i2 = order.index(2 * a), order.index(2 * a + 1)
            if abs(i1 - i2) != 1:
                raise TranscriptionError("cap legs not adjacent at apex")
            order[min(i1, i2)] = ("v", left)
            order[max(i1, i2)] = ("v", right)
    for k in range(0, len(order), 2):
        if not (isinstance(order[k], tuple) and isinstance(order[k + 1], tuple)
                and order[k][1] // 2 == order[k + 1][1] // 2):
            raise TranscriptionError("caps do not end in the standard pairing")
    if len(ends) != 2 * len(arcs) or ends != sorted(set(ends)):
        raise TranscriptionError("arc endpoints collide")
    return {"color": color, "punctures": len(ends), "letters": letters}


def transcribe_triplane(body):
    strokes, _ = interpret(body)
    axes = []
    for s in strokes:
        if s.color == "black" and s.weight == "very thick":
            pts, _ = polyline(s)
            if len(pts) == 2 and abs(pts[0][1]) < TOL and abs(pts[1][1]) < TOL:
                axes.append((min(pts[0][0], pts[1][0]), max(pts[0][0], pts[1][0])))
    axes.sort()
    if len(axes) != 3:
        raise TranscriptionError("expected three panel axes, found %d" % len(axes))
    return [transcribe_tangle_panel(strokes, r) for r in axes]


# ---------------------------------------------------------------------------
# Document walking


def figures(text):
    for m in re.finditer(r"\\begin\{figure\}(.*?)\\end\{figure\}", text, re.S):
        body = m.group(1)
        lm = re.search(r"\\label\{([^}]*)\}", body)
        line = text.count("\n", 0, m.start()) + 1
        yield (lm.group(1) if lm else None), line, body


def tikz_bodies(text):
    return [m.group(1) for m in re.finditer(r"\\begin\{tikzpicture\}(?:\[[^\n]*\])?(.*?)\\end\{tikzpicture\}",
                                            text, re.S)]


def transcribe_moves(body):
    subs = re.findall(r"\\begin\{subfigure\}(.*?)\\end\{subfigure\}", body, re.S)
    columns = []
    missing = []
    for idx, sub in enumerate(subs):
        inp = re.search(r"\\input\{([^}]*)\}", sub)
        if inp and not tikz_bodies(sub):
            missing.append({"column": idx + 1, "input": inp.group(1)})
            columns.append(None)
            continue
        panels = []
        for tb in tikz_bodies(sub):
            strokes, fills = interpret(strip_comments(tb))
            panels.append(transcribe_curve_panel(strokes, fills))
        columns.append(panels)
    return columns, missing


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("source", help="LaTeX source with the figures")
    ap.add_argument("--out", help="output JSON file (default stdout)")
    args = ap.parse_args(argv)
    with open(args.source, encoding="utf-8") as f:
        text = f.read()
    out = {"figures": []}
    failed = False
    for label, line, body in figures(text):
        body = strip_comments(body)
        if label is None:
            continue
        entry = {"label": label, "line": line}
        try:
            if re.search(r"\\begin\{subfigure\}", body):
                columns, missing = transcribe_moves(body)
                entry.update(kind="moves", columns=columns, missing=missing)
            else:
                bodies = tikz_bodies(body)
                if len(bodies) != 1 or "very thick" not in bodies[0]:
                    continue
                entry.update(kind="triplane", panels=transcribe_triplane(bodies[0]))
        except TranscriptionError as e:
            entry.update(kind="error", error=str(e))
            failed = True
        out["figures"].append(entry)
    data = json.dumps(out, indent=1, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(data + "\n")
    else:
        print(data)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
