#!/usr/bin/env python3
"""Generate the bundled synthetic fixture (200 users, ~5000 tweets, three events).

Usage: tools/make_fixture.py [--seed N] [--out DIR]

The generator is deterministic for a given seed. Structure:
  * each event has its own seed keywords plus near neighbours in the embedding
    table, so seed expansion has something to find;
  * a few "core" authors per event post dangerous originals and only retweet
    each other, so exactly they carry nonzero amplification scores; their
    count is chosen from the event's node count to hit the target share of
    dangerous users;
  * annotation pairs are constructed so that Cohen's kappa per event lands on
    a target value.
"""

import argparse
import json
import math
import random
from pathlib import Path

EVENTS = {
    "CAA_NRC": {
        "seeds": ["caa", "nrc"],
        "near": ["citizenship", "npr", "detention"],
        "lexica": ["infiltrators", "termites", "jihadi"],
        "negative": ["condemn"],
        "target": "muslim",
        "kappa": 0.92,
        "share": 0.04,
    },
    "COVID19": {
        "seeds": ["covid", "corona"],
        "near": ["lockdown", "pandemic", "quarantine"],
        "lexica": ["superspreaders", "coronajihad", "biobomb"],
        "negative": ["fakenews"],
        "target": "muslim",
        "kappa": 0.73,
        "share": 0.01,
    },
    "FARMERS": {
        "seeds": ["farmers", "msp"],
        "near": ["kisan", "mandi", "farmlaws"],
        "lexica": ["khalistani", "separatists", "antinational"],
        "negative": ["solidarity"],
        "target": "sikh",
        "kappa": 0.88,
        "share": 0.06,
    },
}

NEUTRAL = (
    "today people news india government delhi protest rally street police video watch "
    "support voice power truth leaders media country state city right law party vote "
    "speech march crowd morning night week time stand fight home family nation "
    "sikh muslim hindu"
).split()

DESCRIPTION_TERMS = ["nationalist", "proud", "journalist", "activist", "hindu", "patriot", "engineer", "mother"]

N_USERS = 200
TWEETS_PER_EVENT = 1600
UNCLASSIFIED = 180
DIM = 16


def unit(vec):
    n = math.sqrt(sum(v * v for v in vec))
    return [v / n for v in vec]


def cosine(a, b):
    return sum(x * y for x, y in zip(a, b))


def embeddings(rng):
    table = {}
    for axis, ev in enumerate(EVENTS.values()):
        for word in ev["seeds"] + ev["near"]:
            vec = [rng.gauss(0.0, 0.08) for _ in range(DIM)]
            vec[axis] = 1.0
            table[word] = unit(vec)
    others = NEUTRAL + DESCRIPTION_TERMS
    for ev in EVENTS.values():
        others += ev["lexica"] + ev["negative"]
    for word in dict.fromkeys(others):
        while True:
            vec = [0.0] * 3 + [rng.gauss(0.0, 1.0) for _ in range(DIM - 3)]
            vec = unit(vec)
            if all(cosine(vec, v) < 0.6 for v in table.values()):
                break
        table[word] = vec
    return table


def kappa_counts(n, a, target):
    """Pick (both no, a-only yes, b-only yes) counts for n pairs with `a`
    agreed positives so that kappa is as close to `target` as possible."""
    best = None
    for b in range(n - a + 1):
        for c in range(n - a - b + 1):
            d = n - a - b - c
            pa = (a + b) / n
            pb = (a + c) / n
            po = (a + d) / n
            pe = pa * pb + (1 - pa) * (1 - pb)
            if pe >= 1:
                continue
            k = (po - pe) / (1 - pe)
            key = (abs(k - target), abs(b - c))
            if best is None or key < best[0]:
                best = (key, d, b, c, k)
    return best[1], best[2], best[3], best[4]


def timestamp(rng):
    day = rng.randint(1, 28)
    return f"2020-{rng.randint(1, 12):02d}-{day:02d}T{rng.randint(0, 23):02d}:{rng.randint(0, 59):02d}:{rng.randint(0, 59):02d}Z"


def sentence(rng, words, extra=()):
    body = rng.sample(NEUTRAL[:-3], 5) + list(extra) + words
    rng.shuffle(body)
    return " ".join(body)


def generate(seed, out):
    rng = random.Random(seed)
    users = [f"u{i:03d}" for i in range(1, N_USERS + 1)]
    popularity = {u: rng.paretovariate(1.3) for u in users}

    tweets = []
    annotations = []
    next_id = [1]

    def new_tweet(user, text, retweet_of=None, quote=False):
        t = {
            "id": f"t{next_id[0]:05d}",
            "user_id": user,
            "text": text,
            "created_at": timestamp(rng),
        }
        if retweet_of is not None:
            t["retweet_of_user"] = retweet_of
            if quote:
                t["is_quote"] = True
        next_id[0] += 1
        tweets.append(t)
        return t

    def event_words(ev, k=2):
        return rng.sample(ev["seeds"] + ev["near"], k)

    for name, ev in EVENTS.items():
        participants = rng.sample(users, 170)
        weights = [popularity[u] for u in participants]
        # Node count of the event graph is the participant set: everyone
        # retweeted is a participant as well.
        core_n = max(2, round(ev["share"] * len(participants)))
        core = participants[:core_n]
        rest = participants[core_n:]
        rest_weights = weights[core_n:]

        originals = []
        candidates = []
        # Core authors: dangerous originals, retweets only within the core.
        dangerous = []
        for i, u in enumerate(core):
            for _ in range(3 + i % 3):
                t = new_tweet(u, sentence(rng, event_words(ev), [rng.choice(ev["lexica"])]))
                dangerous.append(t)
            for _ in range(2):
                new_tweet(u, sentence(rng, event_words(ev)))
        for u in core:
            for v in core:
                if u != v and rng.random() < 0.7:
                    new_tweet(u, "rt " + sentence(rng, event_words(ev)), retweet_of=v)

        n_orig = TWEETS_PER_EVENT // 2 - len(tweets) % 7
        for _ in range(n_orig):
            u = rng.choices(rest, weights=rest_weights)[0]
            roll = rng.random()
            if roll < 0.06:
                t = new_tweet(u, sentence(rng, event_words(ev), [rng.choice(ev["lexica"])]))
                candidates.append(t)
            elif roll < 0.08:
                # Counter-speech quoting a term; the negative lexicon drops it.
                new_tweet(u, sentence(rng, event_words(ev), [rng.choice(ev["lexica"]), ev["negative"][0]]))
            else:
                extra = []
                if rng.random() < 0.1:
                    extra.append(ev["target"])
                originals.append(new_tweet(u, sentence(rng, event_words(ev), extra)))

        # Retweets by non-core users of anything in the event, core included.
        pool = originals + candidates + dangerous
        pool_weights = [popularity[t["user_id"]] for t in pool]
        n_rt = TWEETS_PER_EVENT - n_orig - len(dangerous)
        for _ in range(n_rt):
            u = rng.choice(rest)
            src = rng.choices(pool, weights=pool_weights)[0]
            if src["user_id"] == u:
                continue
            quote = rng.random() < 0.03
            text = ("rt @" if not quote else "") + src["user_id"] + " " + src["text"]
            new_tweet(u, text, retweet_of=src["user_id"], quote=quote)

        # Leaving a few candidates unannotated widens the reachable kappa values.
        best = None
        for m in range(max(0, len(candidates) - 12), len(candidates) + 1):
            d, b, c, k = kappa_counts(len(dangerous) + m, len(dangerous), ev["kappa"])
            if best is None or abs(k - ev["kappa"]) < abs(best[3] - ev["kappa"]):
                best = (d, b, c, k, m)
        d, b, c, k, m = best
        candidates = candidates[:m]
        n_pairs = len(dangerous) + m
        labels = [(False, False)] * d + [(True, False)] * b + [(False, True)] * c
        rng.shuffle(labels)
        for t in dangerous:
            annotations.append({"tweet_id": t["id"], "label_a": True, "label_b": True})
        for t, (la, lb) in zip(candidates, labels):
            annotations.append({"tweet_id": t["id"], "label_a": la, "label_b": lb})
        print(f"{name}: {len(participants)} participants, {core_n} core, {n_pairs} pairs, kappa {k:.4f}")

    for _ in range(UNCLASSIFIED):
        new_tweet(rng.choice(users), sentence(rng, []))
    # One annotator only: reported, not used.
    annotations.append({"tweet_id": tweets[-1]["id"], "label_a": True})

    rng.shuffle(tweets)
    rng.shuffle(annotations)

    profiles = []
    stances = []
    following = []
    for i, u in enumerate(users):
        scale = popularity[u]
        p = {
            "id": u,
            "statuses_count": int(rng.lognormvariate(7, 1.2)),
            "followers_count": int(200 * scale * rng.lognormvariate(0, 1)),
            "friends_count": int(rng.lognormvariate(6, 1)),
            "favourites_count": int(rng.lognormvariate(8, 1.5)),
            "verified": rng.random() < 0.15,
            "description": " ".join(rng.sample(DESCRIPTION_TERMS, 2) + rng.sample(NEUTRAL, 3)),
        }
        if i % 10 == 0:
            p["category"] = "politician"
            p["party"] = rng.choice(["BJP", "INC", "Other"])
        elif i % 10 == 1:
            p["category"] = "influencer"
            p["kind"] = rng.choice(["journalist", "entertainment", "sports"])
        profiles.append(p)
        if rng.random() < 0.7:
            stances.append({"user_id": u, "stance": round(rng.uniform(-1, 1), 3)})
        total = int(rng.lognormvariate(3, 1.5))
        lean = rng.random()
        if lean < 0.3:
            bjp = rng.randint(0, total)
            inc = total - bjp
        else:
            bjp = round(total * 14094 / 26435)
            inc = total - bjp
        following.append({"user_id": u, "bjp": bjp, "inc": inc})

    out.mkdir(parents=True, exist_ok=True)

    def jsonl(path, rows):
        with open(out / path, "w") as f:
            for r in rows:
                f.write(json.dumps(r, sort_keys=True) + "\n")

    jsonl("tweets.jsonl", tweets)
    jsonl("users.jsonl", profiles)
    jsonl("annotations.jsonl", annotations)
    jsonl("stances.jsonl", stances)
    jsonl("following.jsonl", following)
    lexica = [
        {
            "event": name,
            "target_group": ev["target"],
            "lexica": ev["lexica"],
            "negative_lexica": ev["negative"],
            "seed_keywords": ev["seeds"],
        }
        for name, ev in EVENTS.items()
    ]
    with open(out / "lexica.json", "w") as f:
        json.dump(lexica, f, indent=2, sort_keys=True)
        f.write("\n")
    table = embeddings(rng)
    with open(out / "embeddings.txt", "w") as f:
        f.write(f"{len(table)} {DIM}\n")
        for word in sorted(table):
            f.write(word + " " + " ".join(f"{v:.6f}" for v in table[word]) + "\n")
    with open(out / "config.ini", "w") as f:
        f.write(
            "[paths]\n"
            "tweets = tweets.jsonl\nusers = users.jsonl\nannotations = annotations.jsonl\n"
            "stances = stances.jsonl\nfollowing = following.jsonl\nlexica = lexica.json\n"
            "embeddings = embeddings.txt\noutput = output\n\n"
            "[events]\nnames = CAA_NRC, COVID19, FARMERS\n\n"
            "[classify-events]\ntau = 0.7\nmax_iter = 10\n\n"
            "[dab]\nt = 2\n\n[classify]\nk = 3\n\n"
            "[polarity]\nalpha = 0.005\ntotal_bjp = 14094\ntotal_inc = 12341\n\n"
            f"[stats]\nalpha = 0.05\nbootstrap = 2000\nseed = {seed}\n\n"
            "[terms]\npairs = jihadi:muslim, khalistani:sikh\n"
            f"description = {', '.join(DESCRIPTION_TERMS)}\n"
        )
    print(f"{len(tweets)} tweets, {len(profiles)} users written to {out}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=20240101)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "tests" / "fixtures")
    args = ap.parse_args()
    generate(args.seed, args.out)


if __name__ == "__main__":
    main()
