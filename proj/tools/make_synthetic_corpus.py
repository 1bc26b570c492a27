#!/usr/bin/env python3
"""Writes the bundled synthetic M2 corpus (data/synthetic.m2).

Each clean sentence is corrupted with one to three errors drawn from four
families: misspelling (1:1 substitution), agreement/word-choice (1:1
substitution), swapped neighbours (2:2 substitution), a missing word (gold
insertion of one token) and a spurious word (gold deletion). Substitutions keep
their span length and insertions are single tokens, so every masking strategy
can express every correction. Output is deterministic for a given seed.
"""

import argparse
import random

CLEAN = [
    "I would recommend you to visit the museum on Sunday",
    "The hotel staff were very friendly and the rooms were adequate",
    "There is a number 8 bus in front of the hotel",
    "We went to the beach and played football all afternoon",
    "My sister has lived in London for three years",
    "The weather was beautiful during the whole trip",
    "He told me that the film was excellent",
    "They have been waiting for the train since morning",
    "She bought a new dress for the party",
    "The teacher gave us a lot of homework yesterday",
    "I am writing to complain about the service in your restaurant",
    "At the beginning of the course we learned basic grammar",
    "It was an unusual experience for all of us",
    "Our accommodation was close to the city centre",
    "The children were playing in the garden when it started to rain",
    "I think that this is the best solution for everyone",
    "Could you send me more information about the course",
    "The concert started late because of technical problems",
    "We had dinner at a small restaurant near the river",
    "He is interested in learning how to cook",
    "The price of the tickets was too high for students",
    "Many people prefer to travel by car",
    "I have never seen such a beautiful place before",
    "The manager promised to solve the problem quickly",
    "You should bring warm clothes because it gets cold at night",
    "My friends and I decided to organise a surprise party",
    "The museum opens at nine and closes at five",
    "She speaks English and French very well",
    "We could not find a taxi so we walked to the station",
    "The food in the canteen was not very good",
    "I look forward to hearing from you soon",
    "The book was more interesting than the film",
    "They arrived at the airport two hours early",
    "He has worked for the company since last year",
    "It is important to do some exercise every day",
    "The shop was closed when we got there",
    "Our guide explained the history of the castle",
    "I was very disappointed with the quality of the show",
    "The students have to wear a uniform at school",
    "We stayed in a hotel which was next to the sea",
    "My brother plays the guitar in a band",
    "The lessons were useful and the teachers were kind",
    "I would like to apply for the job advertised in the newspaper",
    "The festival takes place every summer in the park",
    "She was tired because she had worked all night",
    "The bus leaves only every half an hour",
    "Please let me know if you need any help",
    "The city has changed a lot in recent years",
    "We enjoyed the trip even though it rained",
    "The new sports centre will open next month",
    "He forgot to bring his passport to the airport",
    "Most of the visitors come from other countries",
    "The room was clean but the bed was uncomfortable",
    "I hope you will accept my apology",
    "They spent the weekend at their grandparents house",
    "The exhibition was one of the best I have ever seen",
    "Everyone agreed that the meeting was a success",
    "The journey took longer than we expected",
    "I recommend the restaurant to anyone who likes fish",
    "We need more time to finish the project",
]

MISSPELL = {
    "recommend": "recomend", "adequate": "adequite", "beautiful": "beatiful",
    "excellent": "excelent", "beginning": "begining", "unusual": "unusuall",
    "accommodation": "accomodation", "interested": "intrested", "friends": "freinds",
    "restaurant": "restaurent", "information": "infomation", "organise": "organice",
    "which": "wich", "because": "becouse", "there": "ther", "disappointed": "dissapointed",
    "useful": "usefull", "advertised": "advertized", "visitors": "visiters",
    "expected": "expectet", "forward": "foward", "tired": "tierd",
}

WORD_CHOICE = {
    "went": "goed", "were": "was", "was": "were", "has": "have", "have": "has",
    "is": "are", "a": "an", "an": "a", "the": "a", "in": "on", "on": "in", "at": "in",
    "for": "since", "since": "for", "told": "said", "more": "most", "than": "then",
    "too": "to", "bought": "buyed", "gave": "gived", "decided": "decide",
    "promised": "promise", "arrived": "arrive", "stayed": "stay",
}

# Words that can go missing (gold insertion) or be added by the learner.
DROPPABLE = {"the", "a", "to", "of", "for", "and", "that", "in", "at", "very"}
SPURIOUS = ["the", "to", "of", "very", "so", "really", "that"]


def corrupt(clean, rng):
    """Returns (source tokens, gold edits) with edits as (start, end, replacement)."""
    target = clean.split()
    n_errors = rng.choice([1, 1, 2, 2, 3])
    # Pick error sites on the clean sentence, keeping one untouched token
    # between any two sites.
    # Prefer positions that admit a substitution or a dropped word.
    rich = [i for i, w in enumerate(target)
            if w in MISSPELL or w in WORD_CHOICE or w in DROPPABLE]
    rest = [i for i in range(len(target)) if i not in rich]
    order = rng.sample(rich, len(rich)) + rng.sample(rest, len(rest))
    sites = []
    for pos in order:
        if len(sites) == n_errors:
            break
        if all(abs(pos - s) > 2 for s in sites):
            sites.append(pos)
    sites.sort()

    plan = {}
    for pos in sites:
        word = target[pos]
        options = []  # (weight, plan)
        if word in MISSPELL:
            options.append((6, ("sub", MISSPELL[word])))
        if word in WORD_CHOICE:
            options.append((4, ("sub", WORD_CHOICE[word])))
        if (word in DROPPABLE and 0 < pos < len(target) - 1
                and target[pos - 1] != word and target[pos + 1] != word):
            options.append((4, ("drop", None)))
        if pos + 1 < len(target) and target[pos + 1] != word:
            options.append((1, ("swap", None)))
        options.append((1, ("spurious", rng.choice(SPURIOUS))))
        weights = [w for w, _ in options]
        plan[pos] = rng.choices([p for _, p in options], weights=weights)[0]

    source = []
    edits = []
    pos = 0
    while pos < len(target):
        word = target[pos]
        kind, arg = plan.get(pos, (None, None))
        if kind == "sub":
            edits.append((len(source), len(source) + 1, [word]))
            source.append(arg)
            pos += 1
        elif kind == "drop":
            edits.append((len(source), len(source), [word]))
            pos += 1
        elif kind == "swap":
            nxt = target[pos + 1]
            edits.append((len(source), len(source) + 2, [word, nxt]))
            source.extend([nxt, word])
            pos += 2
        elif kind == "spurious":
            neighbours = {source[-1] if source else None, word}
            extra = arg if arg not in neighbours else "really"
            edits.append((len(source), len(source) + 1, []))
            source.append(extra)
            source.append(word)
            pos += 1
        else:
            source.append(word)
            pos += 1
    return source, edits


def edit_type(start, end, replacement):
    if start == end:
        return "M:OTHER"
    return "U:OTHER" if not replacement else "R:OTHER"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=20191104)
    ap.add_argument("--out", default="data/synthetic.m2")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    blocks = []
    for clean in CLEAN:
        source, edits = corrupt(clean, rng)
        lines = ["S " + " ".join(source)]
        for start, end, repl in edits:
            text = " ".join(repl) if repl else "-NONE-"
            lines.append(
                f"A {start} {end}|||{edit_type(start, end, repl)}|||{text}|||REQUIRED|||-NONE-|||0")
        blocks.append("\n".join(lines) + "\n")
    with open(args.out, "w", encoding="utf-8") as f:
        f.write("\n".join(blocks) + "\n")


if __name__ == "__main__":
    main()
