# %% [markdown]
# # Cleaning noisy comments
#
# Social-media comments arrive with emoji, hashtags, stretched letters and
# fullwidth characters. `clean` strips all of that and repeats until nothing
# changes, so cleaning twice is the same as cleaning once.

# %%
from cliquespell.normalize import CleaningConfig, TransliterationTable, clean, collapse_runs, strip_emoji

samples = [
    "tu BEWAKOOOOF hai 😂😂 #sach",
    "kya baat hai!!! 👍🏽 @bhai",
    "ｆｕｌｌｗｉｄｔｈ text, well-known -- hyphen",
    "family 👨‍👩‍👧 emoji stays atomic",
]
for s in samples:
    print(repr(s), "->", repr(clean(s)))

# %% [markdown]
# The individual steps are plain functions too.

# %%
print(strip_emoji("ok ❤️ 1️⃣ 🇮🇳 done"))
print(collapse_runs("sooooo goooood", 2), "|", collapse_runs("sooooo goooood", 3))

# %% [markdown]
# A transliteration table maps Latin spellings onto a native script. Lookup
# is greedy longest-match and case-sensitive, and it runs after cleaning.

# %%
table = TransliterationTable({"ka": "क", "kha": "ख", "la": "ल", "ma": "म"})
cfg = CleaningConfig(transliteration=table)
print(clean("kamala!!! khaaa", cfg))
