#!/usr/bin/env python3
"""Regenerates include/dispute/detail/assets.hpp from the files under assets/.

Run from the repository root after editing any template:
    python3 tools/embed_assets.py
"""
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
OUT = ROOT / "include" / "dispute" / "detail" / "assets.hpp"


def main() -> None:
    entries = []
    paths = [p for p in (ROOT / "assets").rglob("*") if p.suffix in (".txt", ".json")]
    for path in sorted(paths):
        key = path.relative_to(ROOT / "assets").with_suffix("").as_posix()
        body = path.read_text(encoding="utf-8")
        if ")ASSET\"" in body:
            raise SystemExit(f"{path}: contains the raw-string delimiter")
        entries.append((key, body))

    lines = [
        "// Generated by tools/embed_assets.py from assets/. Do not edit by hand.",
        "#pragma once",
        "",
        "#include <array>",
        "#include <string_view>",
        "#include <utility>",
        "",
        "namespace dispute::detail {",
        "",
        f"inline constexpr std::array<std::pair<std::string_view, std::string_view>, {len(entries)}> kEmbeddedAssets{{{{",
    ]
    for key, body in entries:
        lines.append(f'    {{"{key}", R"ASSET({body})ASSET"}},')
    lines += ["}};", "", "}  // namespace dispute::detail", ""]
    OUT.write_text("\n".join(lines), encoding="utf-8")


if __name__ == "__main__":
    main()
