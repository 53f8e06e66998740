#!/usr/bin/env python3
"""Conifold sheet: pyramid counting next to the vertex series.

Prints the two-colour crystal series, the vertex series, and the diff under
a sample substitution hypothesis.  The substitution is a hypothesis supplied
here, not something the library asserts.
"""

from crepant.compare import compare


def main():
    sheet = compare(
        "conifold", 3, {"0": -1, "1": -2},
        variable_map={"q0": (-1, {"Q0": 1, "t": -1}),
                      "q1": (-1, {"Q0": 1, "t": 1})},
        t_cutoff=14)
    print(sheet.to_text())
    print("certificate signs over the configured roots:")
    for vector, kind, sign in sheet.certificate.signs:
        print(f"  {vector} ({kind}): {'+' if sign > 0 else '-'}")


if __name__ == "__main__":
    main()
