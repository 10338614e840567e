"""
Scoring program pairs: containment, resemblance, grades
=======================================================

Two programs are compared through their fingerprint sets. A path
matches when some path on the other side is within alpha differing
bits. Containment asks "how much of the smaller program appears in
the larger one" (subclone detection); resemblance is the Jaccard-style
symmetric variant. The smallest observed distance grades the pair.
"""

from cfgprint import RunConfig, classify, fingerprint_source, pair_report, score_pair

config = RunConfig()

ORIGINAL = """\
declare acc, i;
acc = 0;
for i = 1 to 20
  if (i % 2 == 0)
    acc = acc + i * 3;
  endif
endfor
output acc;
"""

# the same logic after a consistent rename and fresh literals
RENAMED = """\
declare sum, k;
sum = 7;
for k = 4 to 9
  if (k % 5 == 0)
    sum = sum + k * 2;
  endif
endfor
output sum;
"""

# the original grown by an extra elseif arm with its own body. Paths
# that take the old arm are untouched; the path that skips both arms
# now crosses one extra header. That path is short, so the one added
# statement carries real voting weight and moves it several bits.
EXTENDED = """\
declare acc, i;
acc = 0;
for i = 1 to 20
  if (i % 2 == 0)
    acc = acc + i * 3;
  elseif (i % 7 == 0)
    acc = acc - 1;
    output "lucky";
  endif
endfor
output acc;
"""

UNRELATED = """\
declare a, b;
a = "seed";
b = 3;
case (b / 2)
when (1)
  b = b - 1;
when (2)
  output a;
endcase
while (b != 0)
  b = b - 1;
endwhile
output b;
"""

progs = {
    name: fingerprint_source(text, name, config)
    for name, text in [("original", ORIGINAL), ("renamed", RENAMED),
                       ("extended", EXTENDED), ("unrelated", UNRELATED)]
}

# a rename scores 1.0 even at alpha 0: normalization already erased it
print("original vs renamed, alpha=0:",
      score_pair(progs["original"], progs["renamed"], alpha=0, mode="containment").value)

# containment absorbs the added arm; resemblance charges for it
for mode in ("containment", "resemblance"):
    s = score_pair(progs["original"], progs["extended"], alpha=config.alpha, mode=mode)
    print(f"original vs extended, {mode}: {s.value:.3f} "
          f"({s.matched_count}/{s.denominator} paths matched)")

# unrelated programs stay near zero at sane alpha
s = score_pair(progs["original"], progs["unrelated"], alpha=config.alpha)
print(f"original vs unrelated, containment: {s.value:.3f}")

# widening alpha only ever admits more matches; the score is monotone.
# The perturbed skip path comes into reach at alpha 8, long before
# anything unrelated does.
print("\nalpha sweep:")
for alpha in (0, 4, 8, 16, 24, 32):
    ext = score_pair(progs["original"], progs["extended"], alpha=alpha)
    unrel = score_pair(progs["original"], progs["unrelated"], alpha=alpha)
    print(f"  alpha={alpha:<2}  vs extended={ext.value:.3f}  vs unrelated={unrel.value:.3f}")

# pair_report() adds evidence: for each matched probe path, the
# nearest partner and its distance, plus the overall minimum distance
# that drives the verdict grade
report = pair_report(progs["original"], progs["extended"], config.alpha)
print("\nevidence (probe hex, partner hex, distance):")
for probe_hex, other_hex, dist in report.evidence:
    print(f"  {probe_hex}  {other_hex}  {dist}")
print(f"min distance {report.min_distance}, grade {classify(report.min_distance)!r}")
