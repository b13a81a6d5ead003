#!/usr/bin/env python3
"""Fetch the pancreatic-cancer serum-biomarker dataset (Wieand et al. 1989).

The file wiedat2b has one row per subject with two biomarker columns
(y1 = CA 19-9, y2 = CA 125, both on log scale in the Fred Hutch copy) and
a disease indicator d (1 = pancreatic cancer, 0 = pancreatitis control).
90 cases and 51 controls.  The same data ship with the R package
`logcondens` as data(pancreas).

Output: data/ca125.csv with header score,group where score is the CA 125
value and group is the disease indicator, cases first.

Usage: python3 scripts/fetch_ca125.py [--out data/ca125.csv]
"""

import argparse
import csv
import io
import sys
import urllib.request

SOURCES = [
    # Fred Hutch diagnostic biomarkers center, original study archive.
    "https://research.fredhutch.org/content/dam/stripe/diagnostic-biomarkers-statistical-center/files/wiedat2b.csv",
    "https://research.fredhutch.org/content/dam/stripe/diagnostic-biomarkers-statistical-center/files/wiedat2b.txt",
    # CRAN mirror copy of the logcondens sources (pancreas.txt in data/).
    "https://cran.r-project.org/src/contrib/logcondens_2.1.8.tar.gz",
]


def parse_delimited(text):
    """Parse rows of (y1, y2, d) from csv or whitespace separated text."""
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) < 3:
            continue
        try:
            y1, y2, d = float(parts[0]), float(parts[1]), int(float(parts[2]))
        except ValueError:
            continue  # header line
        rows.append((y1, y2, d))
    return rows


def fetch(url):
    req = urllib.request.Request(url, headers={"User-Agent": "curl/7.81"})
    with urllib.request.urlopen(req, timeout=30) as resp:
        return resp.read()


def rows_from_tarball(blob):
    import tarfile

    with tarfile.open(fileobj=io.BytesIO(blob), mode="r:gz") as tar:
        for member in tar.getmembers():
            if member.name.endswith(("pancreas.txt", "pancreas.rda")):
                if member.name.endswith(".txt"):
                    return parse_delimited(tar.extractfile(member).read().decode())
                print("found pancreas.rda; install rdata to decode", file=sys.stderr)
    return []


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/ca125.csv")
    args = ap.parse_args()

    rows = []
    for url in SOURCES:
        try:
            print(f"trying {url}", file=sys.stderr)
            blob = fetch(url)
            rows = rows_from_tarball(blob) if url.endswith(".tar.gz") else parse_delimited(blob.decode())
            if rows:
                break
        except Exception as exc:
            print(f"  failed: {exc}", file=sys.stderr)

    if not rows:
        print("no source reachable; dataset not fetched", file=sys.stderr)
        return 1
    if len(rows) != 141:
        print(f"warning: expected 141 subjects, got {len(rows)}", file=sys.stderr)

    cases = [r for r in rows if r[2] == 1]
    controls = [r for r in rows if r[2] == 0]
    print(f"{len(cases)} cases, {len(controls)} controls", file=sys.stderr)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["score", "group"])
        for y1, y2, d in cases + controls:
            w.writerow([repr(y2), 1 if d else 0])
    print(f"wrote {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
