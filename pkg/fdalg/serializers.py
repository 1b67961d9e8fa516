# -*- coding: utf-8 -*-
"""
JSON codec for algebras, elements and maps.

* algebra: ``{"dims": [n1, ...]}``
* element: ``{"algebra": {...}, "blocks": [[[[re, im], ...], ...], ...]}``
* map: ``{"dom": {...}, "cod": {...}, "images": [element, ...]}`` with the
  images of the canonical basis in order.

Floats are written with their shortest round-trip representation and output
is key-sorted, so equal values always print to equal bytes.
"""
import json
import sys
from dataclasses import fields, is_dataclass

import numpy as np

from fdalg.algebra import Element, FdAlgebra
from fdalg.exceptions import ParseError
from fdalg.maps import LinMap, make_map


def _real(x):
    x = float(x)
    return 0.0 if x == 0 else x


def complex_to_json(z):
    z = complex(z)
    return [_real(z.real), _real(z.imag)]


def complex_from_json(obj):
    if isinstance(obj, bool):
        raise ParseError("expected a number, got %r" % (obj,))
    if isinstance(obj, (int, float)):
        z = complex(obj)
    elif isinstance(obj, list) and len(obj) == 2 and all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj):
        z = complex(obj[0], obj[1])
    else:
        raise ParseError("expected [re, im], got %r" % (obj,))
    if not np.isfinite(z):
        raise ParseError("entries must be finite, got %r" % (obj,))
    return z


def algebra_to_json(alg):
    return {'dims': list(alg.dims)}


def algebra_from_json(obj):
    if isinstance(obj, list):
        obj = {'dims': obj}
    if not isinstance(obj, dict) or not isinstance(obj.get('dims'), list):
        raise ParseError("an algebra is {\"dims\": [n1, ...]}, got %r" % (obj,))
    dims = obj['dims']
    if not all(isinstance(n, int) and not isinstance(n, bool) for n in dims):
        raise ParseError("block dimensions must be integers, got %r" % (dims,))
    return FdAlgebra(tuple(dims))


def parse_dims(text):
    """``"2,1"`` -> FdAlgebra([2, 1]); the empty string is the zero algebra."""
    try:
        dims = tuple(int(n) for n in text.replace(' ', '').split(',') if n)
    except ValueError:
        raise ParseError("bad algebra dimensions %r" % text)
    return FdAlgebra(dims)


def element_to_json(a):
    return {
        'algebra': algebra_to_json(a.algebra),
        'blocks': [[[complex_to_json(z) for z in row] for row in x]
                   for x in a.blocks],
    }


def element_from_json(obj, algebra=None):
    if not isinstance(obj, dict) or 'blocks' not in obj:
        raise ParseError("an element needs \"blocks\", got %r" % (obj,))
    if 'algebra' in obj:
        alg = algebra_from_json(obj['algebra'])
        if algebra is not None and alg != algebra:
            raise ParseError("element of %r where %r was expected"
                             % (alg, algebra))
    elif algebra is not None:
        alg = algebra
    else:
        raise ParseError("an element needs \"algebra\"")
    raw = obj['blocks']
    if not isinstance(raw, list) or len(raw) != alg.num_blocks:
        raise ParseError("%r needs %d blocks" % (alg, alg.num_blocks))
    blocks = []
    for n, block in zip(alg.dims, raw):
        if (not isinstance(block, list) or len(block) != n
                or any(not isinstance(row, list) or len(row) != n
                       for row in block)):
            raise ParseError("expected a %dx%d block" % (n, n))
        blocks.append(np.array([[complex_from_json(z) for z in row]
                                for row in block], dtype=complex))
    return Element(alg, blocks)


def map_to_json(f):
    return {
        'dom': algebra_to_json(f.dom),
        'cod': algebra_to_json(f.cod),
        'images': [element_to_json(x) for x in f.images()],
    }


def map_from_json(obj):
    if not isinstance(obj, dict) or not {'dom', 'cod', 'images'} <= set(obj):
        raise ParseError("a map needs \"dom\", \"cod\" and \"images\"")
    dom = algebra_from_json(obj['dom'])
    cod = algebra_from_json(obj['cod'])
    images = obj['images']
    if not isinstance(images, list) or len(images) != dom.dim:
        raise ParseError("%r needs %d basis images" % (dom, dom.dim))
    return make_map(dom, cod, [element_from_json(x, cod) for x in images])


def to_json(value):
    """Convert fdalg values, numpy data and dataclasses to plain JSON."""
    if isinstance(value, FdAlgebra):
        return algebra_to_json(value)
    if isinstance(value, Element):
        return element_to_json(value)
    if isinstance(value, LinMap):
        return map_to_json(value)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return _real(value)
    if isinstance(value, (complex, np.complexfloating)):
        return complex_to_json(value)
    if isinstance(value, np.ndarray):
        return to_json(value.tolist())
    if isinstance(value, dict):
        return dict((str(k), to_json(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    if is_dataclass(value):
        return dict((f.name, to_json(getattr(value, f.name)))
                    for f in fields(value) if f.repr)
    if value is None or isinstance(value, str):
        return value
    raise TypeError("can't serialize %r" % (value,))


def from_json(obj):
    """Decode whichever of algebra, element or map ``obj`` describes."""
    if isinstance(obj, dict):
        if 'images' in obj:
            return map_from_json(obj)
        if 'blocks' in obj:
            return element_from_json(obj)
        if 'dims' in obj:
            return algebra_from_json(obj)
    raise ParseError("not an algebra, element or map: %r" % (obj,))


def dumps(value):
    return json.dumps(to_json(value), sort_keys=True, separators=(',', ':'),
                      ensure_ascii=False, allow_nan=False)


def loads(text):
    try:
        return json.loads(text)
    except ValueError as exc:
        raise ParseError("malformed JSON: %s" % exc)


def read_document(path=None):
    """Parsed JSON from ``path``, or from stdin when ``path`` is None or '-'."""
    if path in (None, '-'):
        return loads(sys.stdin.read())
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            return loads(handle.read())
    except OSError as exc:
        raise ParseError("can't read %s: %s" % (path, exc))
