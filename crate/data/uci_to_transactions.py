"""Convert a UCI categorical CSV (e.g. agaricus-lepiota.data) into transaction format.

Every (column, value) pair becomes one item. Ids are assigned column by column,
values in sorted order, starting at 1. Missing values ('?') are kept as items.
"""
import sys


def main(src, dst):
    rows = [line.strip().split(",") for line in open(src) if line.strip()]
    ids = {}
    next_id = 1
    for col in range(len(rows[0])):
        for value in sorted({r[col] for r in rows}):
            ids[(col, value)] = next_id
            next_id += 1
    with open(dst, "w") as out:
        for r in rows:
            out.write(" ".join(str(ids[(c, v)]) for c, v in enumerate(r)) + "\n")
    print(f"{len(rows)} transactions, {next_id - 1} items", file=sys.stderr)


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
