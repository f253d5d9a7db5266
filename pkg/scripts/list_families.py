#!/usr/bin/env python3
"""List every sequence family, triangle and recursive preset with its first terms."""

import sys
from pathlib import Path

# Add app to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.services.families.factory import SequenceFactory, TriangleFactory
from app.services.recursive.presets import available_presets, get_preset
from app.services.recursive.recursive_matrix import catalan_like
from app.services.report_renderer import dumps

PREVIEW = 5


def get_family_info():
    """Name, parameters and first terms of every registered family."""
    families = []
    for name in SequenceFactory.available_families():
        family = SequenceFactory.get_family(name)
        info = family.describe()
        info["preview"] = [t.to_json() for t in family.terms(PREVIEW)]
        families.append(info)
    return families


def get_triangle_info():
    triangles = []
    for name in TriangleFactory.available_triangles():
        triangle = TriangleFactory.get_triangle(name)
        rows = [[e.to_json() for e in triangle.row(i)] for i in range(PREVIEW)]
        triangles.append({"name": name, "rows": rows})
    return triangles


def get_preset_info():
    presets = []
    for name in available_presets():
        preset = get_preset(name)
        presets.append({
            "name": name,
            "description": preset.description,
            "certificate": preset.certificate is not None,
            "preview": [t.to_json() for t in catalan_like(preset.spec, PREVIEW)],
        })
    return presets


def print_listing(families, triangles, presets):
    """Print the listing in a readable format."""
    print("=" * 80)
    print("Sequence families")
    print("=" * 80)
    for info in families:
        params = f" ({', '.join(f'{k}={v}' for k, v in info['params'].items())})" if info["params"] else ""
        print(f"  {info['name']}{params}")
        print(f"          {' '.join(str(t) for t in info['preview'])}")

    print(f"\n{'─' * 80}\n  Triangles\n{'─' * 80}")
    for info in triangles:
        print(f"  {info['name']}")
        for row in info["rows"]:
            print(f"          {row}")

    print(f"\n{'─' * 80}\n  Recursive presets\n{'─' * 80}")
    for info in presets:
        mark = "" if info["certificate"] else " (no bidiagonal certificate)"
        print(f"  {info['name']}{mark}: {info['description']}")

    print(f"\n{'=' * 80}")
    print(f"Total: {len(families)} families, {len(triangles)} triangles, {len(presets)} presets")
    print("=" * 80)


if __name__ == '__main__':
    listing = (get_family_info(), get_triangle_info(), get_preset_info())

    if '--json' in sys.argv:
        families, triangles, presets = listing
        print(dumps({"families": families, "triangles": triangles, "presets": presets}).decode())
    else:
        print_listing(*listing)
