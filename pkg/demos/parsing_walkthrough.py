import math

from zmlab import (EstimatorKind, alphabet, build_index, estimate,
                   match_length, parse_mzm, parse_zm, seq_from_text,
                   waiting_time)

# A small binary pair, short enough to follow by eye.
alph = alphabet("01")
x = seq_from_text("1010010101001011101010011", alph)
y = seq_from_text("0101100101100101010100110", alph)
N = 25

zm = parse_zm(y, x, N)
print("ZM words (longest prefixes found in x):")
print("  " + " | ".join(zm.words(y)))
print(f"  c_N = {zm.word_count}, last word truncated: {zm.truncated_last}")

mzm = parse_mzm(y, x, N)
print("mZM words (shortest prefixes NOT found in x):")
print("  " + " | ".join(mzm.words(y)))
print(f"  c_N = {mzm.word_count}, last word truncated: {mzm.truncated_last}")

# Each mZM word minus its final letter occurs in x; the whole word does not.
index = build_index(x)
for start, end in mzm.word_spans():
    word = y.symbols[start:end]
    head = word[:-1]
    print(f"  {''.join(alph.labels[s] for s in word):>10s}: "
          f"head occurs={index.contains(head)}, "
          f"word occurs={index.contains(word)}")

print()
for kind in EstimatorKind:
    est = estimate(kind, y, x, N)
    print(f"{kind.value:>16s}: {est.value:.4f} nats "
          f"({est.value_bits:.4f} bits)")

c = mzm.word_count
print(f"\nby hand: c ln N / (N - c) = {c} ln 25 / 21 "
      f"= {c * math.log(25) / 21:.4f}")

# The two scan statistics behind the parses.
print(f"\nwaiting time of y's length-5 prefix in x: {waiting_time(y, x, 5)}")
print(f"match length of y against all of x: {match_length(y, x)}")
