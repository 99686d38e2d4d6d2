"""Deterministic scanline rasterizer for a practical SVG subset.

Supported: rect (incl. rounded corners), circle, ellipse, line, polyline,
polygon, path (full command set with implicit repeats and arcs), groups,
transforms, solid-color fill and stroke with opacity, fill-rule, and inline
`style` presentation properties. The viewBox is stretched to the requested
pixel size axis by axis. Backgrounds start fully transparent.

Unsupported constructs a real renderer would resolve elsewhere (gradients,
<use>, CSS beyond inline style, text) raise RenderError; decorative
metadata elements are skipped. Filters and clipping are ignored.

Everything is pure float math over numpy arrays: the same document and
size produce the same bytes on any host.
"""

from __future__ import annotations

import math
import re

import numpy as np

from ..errors import MalformedPathDataError, RenderError
from .model import RasterImage, SvgDocument, SvgElement
from .pathdata import parse_path_data

# Vertical supersampling of the scanline engine; horizontal coverage is exact.
_SUBSAMPLES_Y = 4
# Fixed curve flattening: deterministic and fine-grained enough at icon sizes.
_CUBIC_SEGMENTS = 24
_QUAD_SEGMENTS = 16
_ARC_MAX_STEP = math.pi / 32
_JOIN_DISC_SEGMENTS = 16

_IDENTITY = np.eye(3)

_SKIP_TAGS = {"defs", "title", "desc", "metadata", "symbol", "style", "script"}
_CONTAINER_TAGS = {"g", "svg", "a", "switch"}
_SHAPE_TAGS = {"rect", "circle", "ellipse", "line", "polyline", "polygon", "path"}

_INHERITED_DEFAULTS = {
    "fill": "black",
    "stroke": "none",
    "stroke-width": "1",
    "fill-rule": "nonzero",
    "fill-opacity": "1",
    "stroke-opacity": "1",
    "color": "black",
}

# CSS3 / SVG named colors.
NAMED_COLORS = {
    "aliceblue": "f0f8ff", "antiquewhite": "faebd7", "aqua": "00ffff",
    "aquamarine": "7fffd4", "azure": "f0ffff", "beige": "f5f5dc",
    "bisque": "ffe4c4", "black": "000000", "blanchedalmond": "ffebcd",
    "blue": "0000ff", "blueviolet": "8a2be2", "brown": "a52a2a",
    "burlywood": "deb887", "cadetblue": "5f9ea0", "chartreuse": "7fff00",
    "chocolate": "d2691e", "coral": "ff7f50", "cornflowerblue": "6495ed",
    "cornsilk": "fff8dc", "crimson": "dc143c", "cyan": "00ffff",
    "darkblue": "00008b", "darkcyan": "008b8b", "darkgoldenrod": "b8860b",
    "darkgray": "a9a9a9", "darkgreen": "006400", "darkgrey": "a9a9a9",
    "darkkhaki": "bdb76b", "darkmagenta": "8b008b", "darkolivegreen": "556b2f",
    "darkorange": "ff8c00", "darkorchid": "9932cc", "darkred": "8b0000",
    "darksalmon": "e9967a", "darkseagreen": "8fbc8f", "darkslateblue": "483d8b",
    "darkslategray": "2f4f4f", "darkslategrey": "2f4f4f",
    "darkturquoise": "00ced1", "darkviolet": "9400d3", "deeppink": "ff1493",
    "deepskyblue": "00bfff", "dimgray": "696969", "dimgrey": "696969",
    "dodgerblue": "1e90ff", "firebrick": "b22222", "floralwhite": "fffaf0",
    "forestgreen": "228b22", "fuchsia": "ff00ff", "gainsboro": "dcdcdc",
    "ghostwhite": "f8f8ff", "gold": "ffd700", "goldenrod": "daa520",
    "gray": "808080", "green": "008000", "greenyellow": "adff2f",
    "grey": "808080", "honeydew": "f0fff0", "hotpink": "ff69b4",
    "indianred": "cd5c5c", "indigo": "4b0082", "ivory": "fffff0",
    "khaki": "f0e68c", "lavender": "e6e6fa", "lavenderblush": "fff0f5",
    "lawngreen": "7cfc00", "lemonchiffon": "fffacd", "lightblue": "add8e6",
    "lightcoral": "f08080", "lightcyan": "e0ffff",
    "lightgoldenrodyellow": "fafad2", "lightgray": "d3d3d3",
    "lightgreen": "90ee90", "lightgrey": "d3d3d3", "lightpink": "ffb6c1",
    "lightsalmon": "ffa07a", "lightseagreen": "20b2aa",
    "lightskyblue": "87cefa", "lightslategray": "778899",
    "lightslategrey": "778899", "lightsteelblue": "b0c4de",
    "lightyellow": "ffffe0", "lime": "00ff00", "limegreen": "32cd32",
    "linen": "faf0e6", "magenta": "ff00ff", "maroon": "800000",
    "mediumaquamarine": "66cdaa", "mediumblue": "0000cd",
    "mediumorchid": "ba55d3", "mediumpurple": "9370db",
    "mediumseagreen": "3cb371", "mediumslateblue": "7b68ee",
    "mediumspringgreen": "00fa9a", "mediumturquoise": "48d1cc",
    "mediumvioletred": "c71585", "midnightblue": "191970",
    "mintcream": "f5fffa", "mistyrose": "ffe4e1", "moccasin": "ffe4b5",
    "navajowhite": "ffdead", "navy": "000080", "oldlace": "fdf5e6",
    "olive": "808000", "olivedrab": "6b8e23", "orange": "ffa500",
    "orangered": "ff4500", "orchid": "da70d6", "palegoldenrod": "eee8aa",
    "palegreen": "98fb98", "paleturquoise": "afeeee",
    "palevioletred": "db7093", "papayawhip": "ffefd5", "peachpuff": "ffdab9",
    "peru": "cd853f", "pink": "ffc0cb", "plum": "dda0dd",
    "powderblue": "b0e0e6", "purple": "800080", "rebeccapurple": "663399",
    "red": "ff0000", "rosybrown": "bc8f8f", "royalblue": "4169e1",
    "saddlebrown": "8b4513", "salmon": "fa8072", "sandybrown": "f4a460",
    "seagreen": "2e8b57", "seashell": "fff5ee", "sienna": "a0522d",
    "silver": "c0c0c0", "skyblue": "87ceeb", "slateblue": "6a5acd",
    "slategray": "708090", "slategrey": "708090", "snow": "fffafa",
    "springgreen": "00ff7f", "steelblue": "4682b4", "tan": "d2b48c",
    "teal": "008080", "thistle": "d8bfd8", "tomato": "ff6347",
    "turquoise": "40e0d0", "violet": "ee82ee", "wheat": "f5deb3",
    "white": "ffffff", "whitesmoke": "f5f5f5", "yellow": "ffff00",
    "yellowgreen": "9acd32",
}

_RGB_FUNC_RE = re.compile(r"rgba?\(([^)]*)\)$")
_TRANSFORM_RE = re.compile(r"(matrix|translate|scale|rotate|skewX|skewY)\s*\(([^)]*)\)")


def _parse_number(raw: str, context: str) -> float:
    text = raw.strip()
    if text.endswith("px"):
        text = text[:-2]
    try:
        return float(text)
    except ValueError:
        raise RenderError(f"cannot parse number {raw!r} for {context}") from None


def _parse_opacity(raw: str, context: str) -> float:
    text = raw.strip()
    if text.endswith("%"):
        value = _parse_number(text[:-1], context) / 100.0
    else:
        value = _parse_number(text, context)
    return min(1.0, max(0.0, value))


def parse_color(raw: str, current_color: str = "black"):
    """Resolve a paint value to (r, g, b, a) floats in [0, 1], or None for no paint."""
    text = raw.strip()
    lowered = text.lower()
    if lowered == "none":
        return None
    if lowered == "transparent":
        return (0.0, 0.0, 0.0, 0.0)
    if lowered == "currentcolor":
        return parse_color(current_color)
    if lowered.startswith("url("):
        raise RenderError(f"unsupported paint reference {text!r}")
    if text.startswith("#"):
        digits = text[1:]
        if len(digits) in (3, 4):
            digits = "".join(c * 2 for c in digits)
        if len(digits) == 6:
            digits += "ff"
        if len(digits) != 8 or any(c not in "0123456789abcdefABCDEF" for c in digits):
            raise RenderError(f"invalid hex color {text!r}")
        r, g, b, a = (int(digits[i:i + 2], 16) / 255.0 for i in (0, 2, 4, 6))
        return (r, g, b, a)
    m = _RGB_FUNC_RE.match(lowered)
    if m:
        parts = [p.strip() for p in m.group(1).split(",")]
        if len(parts) not in (3, 4):
            raise RenderError(f"invalid rgb() color {text!r}")
        try:
            channels = []
            for p in parts[:3]:
                if p.endswith("%"):
                    channels.append(float(p[:-1]) / 100.0)
                else:
                    channels.append(float(p) / 255.0)
            alpha = float(parts[3]) if len(parts) == 4 else 1.0
        except ValueError:
            raise RenderError(f"invalid rgb() color {text!r}") from None
        return tuple(min(1.0, max(0.0, c)) for c in channels) + (
            min(1.0, max(0.0, alpha)),
        )
    if lowered in NAMED_COLORS:
        return parse_color("#" + NAMED_COLORS[lowered])
    raise RenderError(f"unknown color {text!r}")


def parse_transform(raw: str) -> np.ndarray:
    """Parse a `transform` attribute into a 3x3 affine matrix."""
    matrix = _IDENTITY.copy()
    consumed = 0
    for m in _TRANSFORM_RE.finditer(raw):
        consumed += 1
        op = m.group(1)
        try:
            args = [float(p) for p in m.group(2).replace(",", " ").split()]
        except ValueError:
            raise RenderError(f"invalid transform arguments in {raw!r}") from None
        step = _IDENTITY.copy()
        if op == "matrix" and len(args) == 6:
            a, b, c, d, e, f = args
            step[0] = (a, c, e)
            step[1] = (b, d, f)
        elif op == "translate" and len(args) in (1, 2):
            step[0, 2] = args[0]
            step[1, 2] = args[1] if len(args) == 2 else 0.0
        elif op == "scale" and len(args) in (1, 2):
            step[0, 0] = args[0]
            step[1, 1] = args[1] if len(args) == 2 else args[0]
        elif op == "rotate" and len(args) in (1, 3):
            angle = math.radians(args[0])
            cos_a, sin_a = math.cos(angle), math.sin(angle)
            rot = np.array(((cos_a, -sin_a, 0.0), (sin_a, cos_a, 0.0), (0, 0, 1.0)))
            if len(args) == 3:
                cx, cy = args[1], args[2]
                pre = _IDENTITY.copy()
                pre[0, 2], pre[1, 2] = cx, cy
                post = _IDENTITY.copy()
                post[0, 2], post[1, 2] = -cx, -cy
                rot = pre @ rot @ post
            step = rot
        elif op == "skewX" and len(args) == 1:
            step[0, 1] = math.tan(math.radians(args[0]))
        elif op == "skewY" and len(args) == 1:
            step[1, 0] = math.tan(math.radians(args[0]))
        else:
            raise RenderError(f"invalid transform {op}({m.group(2)})")
        matrix = matrix @ step
    stripped = _TRANSFORM_RE.sub("", raw).replace(",", " ").strip()
    if stripped or (raw.strip() and consumed == 0):
        raise RenderError(f"cannot parse transform {raw!r}")
    return matrix


def _transform_points(matrix: np.ndarray, points: np.ndarray) -> np.ndarray:
    return points @ matrix[:2, :2].T + matrix[:2, 2]


# ---------------------------------------------------------------------------
# Geometry: shapes and paths to polylines (user space)

def _bezier_points(control: np.ndarray, segments: int) -> np.ndarray:
    t = np.linspace(0.0, 1.0, segments + 1)[1:, None]
    if len(control) == 4:
        p0, p1, p2, p3 = control
        u = 1.0 - t
        return u ** 3 * p0 + 3 * u ** 2 * t * p1 + 3 * u * t ** 2 * p2 + t ** 3 * p3
    p0, p1, p2 = control
    u = 1.0 - t
    return u ** 2 * p0 + 2 * u * t * p1 + t ** 2 * p2


def _arc_points(p0, rx, ry, rotation_deg, large_arc, sweep, p1):
    """Endpoint-parameterized elliptical arc, flattened to a polyline."""
    if rx == 0 or ry == 0:
        return np.array([p1])
    rx, ry = abs(rx), abs(ry)
    phi = math.radians(rotation_deg % 360.0)
    cos_phi, sin_phi = math.cos(phi), math.sin(phi)
    dx2, dy2 = (p0[0] - p1[0]) / 2.0, (p0[1] - p1[1]) / 2.0
    x1p = cos_phi * dx2 + sin_phi * dy2
    y1p = -sin_phi * dx2 + cos_phi * dy2
    # Scale radii up if the endpoints cannot be joined otherwise.
    lam = (x1p / rx) ** 2 + (y1p / ry) ** 2
    if lam > 1.0:
        scale = math.sqrt(lam)
        rx *= scale
        ry *= scale
    num = rx ** 2 * ry ** 2 - rx ** 2 * y1p ** 2 - ry ** 2 * x1p ** 2
    den = rx ** 2 * y1p ** 2 + ry ** 2 * x1p ** 2
    coeff = math.sqrt(max(0.0, num / den)) if den > 0 else 0.0
    if large_arc == sweep:
        coeff = -coeff
    cxp = coeff * rx * y1p / ry
    cyp = -coeff * ry * x1p / rx
    cx = cos_phi * cxp - sin_phi * cyp + (p0[0] + p1[0]) / 2.0
    cy = sin_phi * cxp + cos_phi * cyp + (p0[1] + p1[1]) / 2.0

    def angle(u, v):
        norm_u = math.hypot(*u)
        norm_v = math.hypot(*v)
        if norm_u == 0 or norm_v == 0:
            return 0.0
        dot = max(-1.0, min(1.0, (u[0] * v[0] + u[1] * v[1]) / (norm_u * norm_v)))
        result = math.acos(dot)
        if u[0] * v[1] - u[1] * v[0] < 0:
            result = -result
        return result

    start_vec = ((x1p - cxp) / rx, (y1p - cyp) / ry)
    end_vec = ((-x1p - cxp) / rx, (-y1p - cyp) / ry)
    theta1 = angle((1.0, 0.0), start_vec)
    delta = angle(start_vec, end_vec) % (2 * math.pi)
    if not sweep and delta > 0:
        delta -= 2 * math.pi
    elif sweep and delta < 0:
        delta += 2 * math.pi

    steps = max(4, int(math.ceil(abs(delta) / _ARC_MAX_STEP)))
    angles = theta1 + delta * np.linspace(0.0, 1.0, steps + 1)[1:]
    xs = cx + rx * np.cos(angles) * cos_phi - ry * np.sin(angles) * sin_phi
    ys = cy + rx * np.cos(angles) * sin_phi + ry * np.sin(angles) * cos_phi
    pts = np.column_stack([xs, ys])
    pts[-1] = p1  # exact endpoint
    return pts


def path_to_subpaths(d: str) -> list[tuple[np.ndarray, bool]]:
    """Flatten path data to [(points (N,2), closed)] in user space."""
    try:
        commands = parse_path_data(d)
    except MalformedPathDataError as exc:
        raise RenderError(f"malformed path data: {exc}") from exc

    subpaths: list[tuple[np.ndarray, bool]] = []
    current: list[np.ndarray] = []
    start = np.zeros(2)
    pos = np.zeros(2)
    last_cubic_ctrl: np.ndarray | None = None
    last_quad_ctrl: np.ndarray | None = None

    def flush(closed: bool):
        nonlocal current
        if len(current) >= 2:
            subpaths.append((np.array(current), closed))
        current = []

    for cmd in commands:
        letter = cmd.letter
        upper = letter.upper()
        relative = letter.islower()
        p = np.array(cmd.params)
        new_cubic = None
        new_quad = None
        if upper == "M":
            target = pos + p if relative else p
            flush(False)
            pos = target
            start = target.copy()
            current = [pos.copy()]
        elif upper == "L":
            target = pos + p if relative else p
            pos = target
            current.append(pos.copy())
        elif upper == "H":
            x = pos[0] + p[0] if relative else p[0]
            pos = np.array([x, pos[1]])
            current.append(pos.copy())
        elif upper == "V":
            y = pos[1] + p[0] if relative else p[0]
            pos = np.array([pos[0], y])
            current.append(pos.copy())
        elif upper in ("C", "S"):
            if upper == "C":
                c1 = pos + p[0:2] if relative else p[0:2]
                c2 = pos + p[2:4] if relative else p[2:4]
                end = pos + p[4:6] if relative else p[4:6]
            else:
                c1 = 2 * pos - last_cubic_ctrl if last_cubic_ctrl is not None else pos
                c2 = pos + p[0:2] if relative else p[0:2]
                end = pos + p[2:4] if relative else p[2:4]
            pts = _bezier_points(np.array([pos, c1, c2, end]), _CUBIC_SEGMENTS)
            current.extend(pts)
            pos = end
            new_cubic = c2
        elif upper in ("Q", "T"):
            if upper == "Q":
                c1 = pos + p[0:2] if relative else p[0:2]
                end = pos + p[2:4] if relative else p[2:4]
            else:
                c1 = 2 * pos - last_quad_ctrl if last_quad_ctrl is not None else pos
                end = pos + p[0:2] if relative else p[0:2]
            pts = _bezier_points(np.array([pos, c1, end]), _QUAD_SEGMENTS)
            current.extend(pts)
            pos = end
            new_quad = c1
        elif upper == "A":
            rx, ry, rot, large, sweep = p[0], p[1], p[2], bool(p[3]), bool(p[4])
            end = pos + p[5:7] if relative else p[5:7]
            pts = _arc_points(pos, rx, ry, rot, large, sweep, end)
            current.extend(pts)
            pos = end
        elif upper == "Z":
            if current:
                flush(True)
            pos = start.copy()
            current = [pos.copy()]
        last_cubic_ctrl = new_cubic
        last_quad_ctrl = new_quad
    flush(False)
    return subpaths


def _rounded_rect_subpath(x, y, w, h, rx, ry) -> np.ndarray:
    rx = min(rx, w / 2.0)
    ry = min(ry, h / 2.0)
    corners = [
        (x + w - rx, y, x + w, y + ry, 0.0),          # top-right
        (x + w, y + h - ry, x + w - rx, y + h, 1.0),  # bottom-right
        (x + rx, y + h, x, y + h - ry, 2.0),          # bottom-left
        (x, y + ry, x + rx, y, 3.0),                  # top-left
    ]
    pts: list[tuple[float, float]] = [(x + rx, y)]
    for sx, sy, ex, ey, quarter in corners:
        pts.append((sx, sy))
        t = np.linspace(0.0, 1.0, 9)[1:]
        theta = (quarter * 0.5 + 1.5) * math.pi + t * (math.pi / 2.0)
        centers = {
            0.0: (x + w - rx, y + ry),
            1.0: (x + w - rx, y + h - ry),
            2.0: (x + rx, y + h - ry),
            3.0: (x + rx, y + ry),
        }
        cx, cy = centers[quarter]
        for th in theta:
            pts.append((cx + rx * math.cos(th), cy + ry * math.sin(th)))
        pts.append((ex, ey))
    return np.array(pts)


def _ellipse_subpath(cx, cy, rx, ry) -> np.ndarray:
    theta = np.linspace(0.0, 2 * math.pi, 65)[:-1]
    return np.column_stack([cx + rx * np.cos(theta), cy + ry * np.sin(theta)])


def shape_to_subpaths(element: SvgElement, attr) -> list[tuple[np.ndarray, bool]]:
    """User-space outline of a basic shape; empty list when degenerate."""
    tag = element.local_tag
    if tag == "rect":
        x = _parse_number(attr("x", "0"), "rect x")
        y = _parse_number(attr("y", "0"), "rect y")
        w = _parse_number(attr("width", "0"), "rect width")
        h = _parse_number(attr("height", "0"), "rect height")
        if w <= 0 or h <= 0:
            return []
        rx_raw, ry_raw = attr("rx"), attr("ry")
        rx = _parse_number(rx_raw, "rect rx") if rx_raw is not None else None
        ry = _parse_number(ry_raw, "rect ry") if ry_raw is not None else None
        if rx is None and ry is None:
            pts = np.array([(x, y), (x + w, y), (x + w, y + h), (x, y + h)])
            return [(pts, True)]
        rx = rx if rx is not None else ry
        ry = ry if ry is not None else rx
        if rx <= 0 or ry <= 0:
            pts = np.array([(x, y), (x + w, y), (x + w, y + h), (x, y + h)])
            return [(pts, True)]
        return [(_rounded_rect_subpath(x, y, w, h, rx, ry), True)]
    if tag == "circle":
        cx = _parse_number(attr("cx", "0"), "circle cx")
        cy = _parse_number(attr("cy", "0"), "circle cy")
        r = _parse_number(attr("r", "0"), "circle r")
        if r <= 0:
            return []
        return [(_ellipse_subpath(cx, cy, r, r), True)]
    if tag == "ellipse":
        cx = _parse_number(attr("cx", "0"), "ellipse cx")
        cy = _parse_number(attr("cy", "0"), "ellipse cy")
        rx = _parse_number(attr("rx", "0"), "ellipse rx")
        ry = _parse_number(attr("ry", "0"), "ellipse ry")
        if rx <= 0 or ry <= 0:
            return []
        return [(_ellipse_subpath(cx, cy, rx, ry), True)]
    if tag == "line":
        x1 = _parse_number(attr("x1", "0"), "line x1")
        y1 = _parse_number(attr("y1", "0"), "line y1")
        x2 = _parse_number(attr("x2", "0"), "line x2")
        y2 = _parse_number(attr("y2", "0"), "line y2")
        return [(np.array([(x1, y1), (x2, y2)]), False)]
    if tag in ("polyline", "polygon"):
        raw = attr("points", "")
        values = raw.replace(",", " ").split()
        if len(values) < 4 or len(values) % 2 != 0:
            if values:
                raise RenderError(f"invalid points list on <{tag}>")
            return []
        try:
            coords = np.array([float(v) for v in values]).reshape(-1, 2)
        except ValueError:
            raise RenderError(f"invalid points list on <{tag}>") from None
        return [(coords, tag == "polygon")]
    if tag == "path":
        return path_to_subpaths(attr("d", ""))
    return []


# ---------------------------------------------------------------------------
# Scanline coverage

def fill_coverage(
    subpaths: list[np.ndarray],
    width: int,
    height: int,
    rule: str = "nonzero",
) -> np.ndarray:
    """Antialiased coverage in [0,1] for implicitly-closed pixel-space subpaths."""
    x0s, y0s, x1s, y1s = [], [], [], []
    for pts in subpaths:
        if len(pts) < 2:
            continue
        closed = np.vstack([pts, pts[:1]])
        x0s.append(closed[:-1, 0])
        y0s.append(closed[:-1, 1])
        x1s.append(closed[1:, 0])
        y1s.append(closed[1:, 1])
    coverage = np.zeros((height, width))
    if not x0s:
        return coverage
    x0 = np.concatenate(x0s)
    y0 = np.concatenate(y0s)
    x1 = np.concatenate(x1s)
    y1 = np.concatenate(y1s)
    keep = y0 != y1
    x0, y0, x1, y1 = x0[keep], y0[keep], x1[keep], y1[keep]
    if x0.size == 0:
        return coverage
    y_lo = np.minimum(y0, y1)
    y_hi = np.maximum(y0, y1)
    dirs_all = np.where(y1 > y0, 1, -1)
    inv_dy = 1.0 / (y1 - y0)
    weight = 1.0 / _SUBSAMPLES_Y

    for row in range(height * _SUBSAMPLES_Y):
        y = (row + 0.5) / _SUBSAMPLES_Y
        mask = (y_lo <= y) & (y < y_hi)
        if not mask.any():
            continue
        xs = x0[mask] + (y - y0[mask]) * (x1[mask] - x0[mask]) * inv_dy[mask]
        dirs = dirs_all[mask]
        order = np.argsort(xs, kind="stable")
        xs = xs[order]
        dirs = dirs[order]
        if rule == "nonzero":
            winding = np.cumsum(dirs)
            inside = winding[:-1] != 0
        else:
            inside = (np.arange(1, xs.size) % 2) == 1
        acc = coverage[row // _SUBSAMPLES_Y]
        for i in np.nonzero(inside)[0]:
            a = max(xs[i], 0.0)
            b = min(xs[i + 1], float(width))
            if b <= a:
                continue
            ia = int(math.floor(a))
            ib = int(math.floor(b))
            if ia == ib:
                acc[ia] += (b - a) * weight
            else:
                acc[ia] += (ia + 1 - a) * weight
                if ib < width:
                    acc[ib] += (b - ib) * weight
                if ib > ia + 1:
                    acc[ia + 1:ib] += weight
    return np.clip(coverage, 0.0, 1.0)


def _disc_polygon(center: np.ndarray, radius: float) -> np.ndarray:
    theta = np.linspace(0.0, 2 * math.pi, _JOIN_DISC_SEGMENTS + 1)[:-1]
    return np.column_stack(
        [center[0] + radius * np.cos(theta), center[1] + radius * np.sin(theta)]
    )


def stroke_polygons(
    pts: np.ndarray, width: float, closed: bool, round_caps: bool
) -> list[np.ndarray]:
    """Decompose a stroked polyline into consistently-wound polygons.

    Segment quads plus disc joins approximate the stroked outline; their
    nonzero-rule union is the stroke coverage. Joins are round (SVG's
    default miter is not reproduced); caps are butt unless round_caps.
    """
    half = width / 2.0
    if half <= 0 or len(pts) < 2:
        return []
    chain = np.vstack([pts, pts[:1]]) if closed else pts
    polys: list[np.ndarray] = []
    joint_indices: set[int] = set()
    for i in range(len(chain) - 1):
        p, q = chain[i], chain[i + 1]
        delta = q - p
        length = math.hypot(delta[0], delta[1])
        if length < 1e-12:
            continue
        normal = np.array([-delta[1], delta[0]]) / length * half
        quad = np.array([p + normal, q + normal, q - normal, p - normal])
        # Enforce CCW so the nonzero union is exact.
        area = 0.0
        for j in range(4):
            a, b = quad[j], quad[(j + 1) % 4]
            area += a[0] * b[1] - b[0] * a[1]
        if area < 0:
            quad = quad[::-1]
        polys.append(quad)
        joint_indices.add(i + 1)
    if not polys:
        return []
    last = len(chain) - 1
    for i in sorted(joint_indices):
        interior = closed or (0 < i < last)
        if interior or round_caps:
            polys.append(_disc_polygon(chain[i % len(pts)], half))
    if round_caps and not closed:
        polys.append(_disc_polygon(chain[0], half))
    return polys


# ---------------------------------------------------------------------------
# Document traversal and compositing

class _Canvas:
    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self.premultiplied = np.zeros((height, width, 3))
        self.alpha = np.zeros((height, width))

    def composite(self, coverage: np.ndarray, rgb, alpha: float) -> None:
        a_src = coverage * alpha
        if not np.any(a_src):
            return
        keep = 1.0 - a_src
        self.premultiplied *= keep[..., None]
        self.premultiplied += a_src[..., None] * np.asarray(rgb)
        self.alpha = self.alpha * keep + a_src

    def to_raster(self) -> RasterImage:
        rgb = np.zeros_like(self.premultiplied)
        mask = self.alpha > 0
        rgb[mask] = self.premultiplied[mask] / self.alpha[mask, None]
        rgba = np.concatenate([rgb, self.alpha[..., None]], axis=2)
        pixels = np.clip(np.rint(rgba * 255.0), 0, 255).astype(np.uint8)
        return RasterImage(width=self.width, height=self.height, pixels=pixels)


def _style_lookup(element: SvgElement) -> dict[str, str]:
    """Presentation attributes overridden by inline `style` declarations."""
    resolved = dict(element.attributes)
    style = element.attributes.get("style")
    if style:
        for declaration in style.split(";"):
            if ":" in declaration:
                name, _, value = declaration.partition(":")
                resolved[name.strip()] = value.strip()
    return resolved


def _viewport_matrix(doc: SvgDocument, width: int, height: int) -> np.ndarray:
    view_box = doc.view_box
    if view_box is None:
        attrs = doc.root.attributes
        try:
            w_attr = float(attrs.get("width", "").rstrip("px"))
            h_attr = float(attrs.get("height", "").rstrip("px"))
            if w_attr > 0 and h_attr > 0:
                view_box = (0.0, 0.0, w_attr, h_attr)
        except ValueError:
            view_box = None
    if view_box is None:
        view_box = (0.0, 0.0, float(width), float(height))
    min_x, min_y, vb_w, vb_h = view_box
    matrix = _IDENTITY.copy()
    matrix[0, 0] = width / vb_w
    matrix[1, 1] = height / vb_h
    matrix[0, 2] = -min_x * matrix[0, 0]
    matrix[1, 2] = -min_y * matrix[1, 1]
    return matrix


def _paint_element(element: SvgElement, inherited: dict, ctm: np.ndarray,
                   group_alpha: float, canvas: _Canvas) -> None:
    tag = element.local_tag
    if tag in _SKIP_TAGS:
        return
    if tag == "use":
        raise RenderError("unsupported element <use> (unresolvable reference)")

    styled = _style_lookup(element)
    local_ctm = ctm
    if "transform" in styled:
        local_ctm = ctm @ parse_transform(styled["transform"])

    style = dict(inherited)
    for name in _INHERITED_DEFAULTS:
        if name in styled:
            style[name] = styled[name]
    own_alpha = group_alpha
    if "opacity" in styled:
        own_alpha *= _parse_opacity(styled["opacity"], "opacity")

    if tag in _CONTAINER_TAGS:
        for child in element.children:
            _paint_element(child, style, local_ctm, own_alpha, canvas)
        return
    if tag not in _SHAPE_TAGS:
        return

    attr = lambda name, default=None: styled.get(name, default)
    subpaths = shape_to_subpaths(element, attr)
    if not subpaths:
        return
    pixel_subpaths = [(_transform_points(local_ctm, pts), closed)
                      for pts, closed in subpaths]

    fillable = tag != "line"
    fill_paint = parse_color(style["fill"], style["color"]) if fillable else None
    if fill_paint is not None:
        alpha = (fill_paint[3] * own_alpha
                 * _parse_opacity(style["fill-opacity"], "fill-opacity"))
        if alpha > 0:
            rule = "evenodd" if style["fill-rule"].strip() == "evenodd" else "nonzero"
            coverage = fill_coverage([pts for pts, _ in pixel_subpaths],
                                     canvas.width, canvas.height, rule)
            canvas.composite(coverage, fill_paint[:3], alpha)

    stroke_paint = parse_color(style["stroke"], style["color"])
    if stroke_paint is not None:
        alpha = (stroke_paint[3] * own_alpha
                 * _parse_opacity(style["stroke-opacity"], "stroke-opacity"))
        stroke_width = _parse_number(style["stroke-width"], "stroke-width")
        # Approximate anisotropic scaling by the geometric mean scale factor.
        det = abs(np.linalg.det(local_ctm[:2, :2]))
        width_px = stroke_width * math.sqrt(det)
        if alpha > 0 and width_px > 0:
            round_caps = styled.get("stroke-linecap", "").strip() == "round"
            polys: list[np.ndarray] = []
            for pts, closed in pixel_subpaths:
                polys.extend(stroke_polygons(pts, width_px, closed, round_caps))
            if polys:
                coverage = fill_coverage(polys, canvas.width, canvas.height, "nonzero")
                canvas.composite(coverage, stroke_paint[:3], alpha)


def render_raster(doc: SvgDocument, width: int, height: int) -> RasterImage:
    """Rasterize a parsed document to RGBA at the given pixel size.

    Raises RenderError when the document uses constructs this backend
    rejects (bad path data, unknown paints, unresolvable references).
    """
    if width <= 0 or height <= 0:
        raise ValueError("raster dimensions must be positive")
    canvas = _Canvas(width, height)
    ctm = _viewport_matrix(doc, width, height)
    style = dict(_INHERITED_DEFAULTS)
    root_styled = _style_lookup(doc.root)
    for name in _INHERITED_DEFAULTS:
        if name in root_styled:
            style[name] = root_styled[name]
    alpha = 1.0
    if "opacity" in root_styled:
        alpha = _parse_opacity(root_styled["opacity"], "opacity")
    if "transform" in root_styled:
        ctm = ctm @ parse_transform(root_styled["transform"])
    for child in doc.root.children:
        _paint_element(child, style, ctm, alpha, canvas)
    return canvas.to_raster()
