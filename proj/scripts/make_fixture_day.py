#!/usr/bin/env python3
"""Writes the synthetic 30-article fixture day under fixtures/fixture_day.

Produces homepage snapshots, article pages and design.json. design.json holds
the intended provider answers; tools/fixturegen turns it into recorded LLM and
embedding fixtures plus the golden output.
"""

import argparse
import html
import json
import pathlib
import shutil

DATE = "2024-10-01"
TIMES = ["06:00", "10:00", "14:00", "18:00", "22:00"]
UTC_OFFSET_HOURS = 4  # EDT

HOSTS = {
    "ap": "https://apnews.com",
    "breitbart": "https://www.breitbart.com",
    "cnn": "https://www.cnn.com",
    "fox_news": "https://www.foxnews.com",
    "huffpost": "https://www.huffpost.com",
    "nyt": "https://www.nytimes.com",
    "guardian": "https://www.theguardian.com",
    "usa_today": "https://www.usatoday.com",
    "wsj": "https://www.wsj.com",
    "washington_post": "https://www.washingtonpost.com",
}

PUBLISHER_LEAN = {
    "huffpost": -3, "guardian": -2, "cnn": -2, "nyt": -1, "washington_post": -1,
    "ap": 0, "usa_today": 0, "wsj": 1, "fox_news": 3, "breitbart": 4,
}

GROUPS = {
    "mideast": {
        "theme": "Escalation of Conflict: Israel and Iran's Military Engagements in Lebanon",
        "theme_short": "Israel Iran Lebanon escalation",
        "labels": ("Politics", "War and International Conflict", "Israel-Iran Conflict"),
        "political": True, "tone": -4,
    },
    "debate": {
        "theme": "High-Stakes Vice Presidential Debate: Vance vs. Walz",
        "theme_short": "Vance Walz vice presidential debate",
        "labels": ("Politics", "Elections", "Debates"),
        "political": True, "tone": -1,
    },
    "helene": {
        "theme": "Hurricane Helene: A Devastating Toll on North Carolina",
        "theme_short": "Hurricane Helene North Carolina toll",
        "labels": ("Disaster", "Natural Disasters", "Hurricanes"),
        "political": False, "tone": -5,
    },
    "ports": {
        "theme": "Nationwide Port Workers Strike Threatens Supply Chains and Economy",
        "theme_short": "Port workers strike",
        "labels": ("Business", "Labor", "Strikes"),
        "political": False, "tone": -2,
    },
    "carter": {
        "theme": "Celebrating Jimmy Carter's Historic 100th Birthday",
        "theme_short": "Jimmy Carter turns 100",
        "labels": ("Politics", "Politician", "US Political Official"),
        "political": False, "tone": 3,
    },
}

FACTS = {
    "mideast.raids": "Israel began ground raids into southern Lebanon targeting Hezbollah positions.",
    "mideast.missiles": "Iran fired a barrage of ballistic missiles toward Israel on Tuesday evening.",
    "debate.venue": "The vice presidential debate between Vance and Walz was held in New York and aired on CBS.",
    "helene.toll": "The death toll from Hurricane Helene climbed past 100 across six states.",
    "ports.scope": "Dockworkers walked off the job at ports from Maine to Texas.",
}

# Sentence tuples: (text, type, tone, focus, fact_key or None).
F, O, B, Q = "fact", "opinion", "borderline", "quote"
NEU, NEG, POS = "neutral", "negative", "positive"
ND, NR, NB, NN = "democrat", "republican", "both", "neither"

ARTICLES = [
    # ---- mideast (8; breitbart is embedded far from the others)
    dict(pub="ap", slug="israel-lebanon-ground-raids-iran-missiles", group="mideast",
         title="Israel sends troops into Lebanon as Iran launches missile barrage",
         sentences=[
             ("Israeli troops crossed into Lebanon before dawn on Tuesday.", F, NEG, NN, None),
             ("Israel began ground raids into southern Lebanon, targeting Hezbollah positions.", F, NEG, NN, "mideast.raids"),
             ("Hours later, Iran fired a barrage of ballistic missiles toward Israel.", F, NEG, NN, "mideast.missiles"),
             ("Sirens sounded across Tel Aviv as residents rushed to shelters.", F, NEG, NN, None),
             ("Regional diplomats warned that the fighting could widen further.", F, NEG, NN, None),
         ]),
    dict(pub="cnn", slug="iran-missile-attack-israel-lebanon-incursion", group="mideast",
         title="Iran's missile attack raises fears of a wider Middle East war",
         sentences=[
             ("Iran fired a barrage of ballistic missiles at Israel on Tuesday evening.", F, NEG, NN, "mideast.missiles"),
             ("Most of the missiles were intercepted, according to Israeli officials.", F, NEU, NN, None),
             ("\"This was a grave mistake,\" an Israeli military spokesperson said.", Q, NEG, NN, None),
             ("The attack came a day after Israel began ground raids in southern Lebanon.", F, NEG, NN, "mideast.raids"),
         ],
         quotes=[("This was a grave mistake,", "", "military spokesperson", "Israel Defense Forces", "Military", "spokesperson")]),
    dict(pub="fox_news", slug="israel-hezbollah-ground-operation-iran", group="mideast",
         title="Israel launches limited ground operation against Hezbollah in Lebanon",
         sentences=[
             ("Israel began limited ground raids into southern Lebanon aimed at Hezbollah positions.", F, NEG, NN, "mideast.raids"),
             ("The operation follows months of rocket fire into northern Israel.", F, NEG, NN, None),
             ("Critics said the administration's response has been weak.", O, NEG, ND, None),
             ("Tehran fired ballistic missiles toward Israel later on Tuesday.", F, NEG, NN, "mideast.missiles"),
         ]),
    dict(pub="nyt", slug="israel-iran-lebanon-analysis", group="mideast",
         title="What Israel's incursion into Lebanon means for the region",
         news_type="news analysis",
         sentences=[
             ("The incursion marks a new phase in a conflict that has simmered for a year.", B, NEG, NN, None),
             ("Israeli forces started ground raids into southern Lebanon against Hezbollah positions.", F, NEG, NN, "mideast.raids"),
             ("Analysts say Iran now faces pressure to respond directly.", B, NEG, NN, None),
             ("Few expect a quick end to the fighting.", O, NEG, NN, None),
         ]),
    dict(pub="guardian", slug="iran-missiles-israel-lebanon-escalation", group="mideast",
         title="Iran strikes Israel with ballistic missiles as Lebanon fighting grows",
         sentences=[
             ("Iran launched a barrage of ballistic missiles toward Israel on Tuesday evening.", F, NEG, NN, "mideast.missiles"),
             ("Explosions lit up the sky over Jerusalem.", F, NEG, NN, None),
             ("Aid agencies warned of a humanitarian crisis in southern Lebanon.", F, NEG, NN, None),
             ("The escalation threatens to draw in the wider region.", B, NEG, NN, None),
         ]),
    dict(pub="wsj", slug="oil-prices-israel-iran-lebanon", group="mideast",
         title="Oil prices jump after Iran fires missiles at Israel",
         sentences=[
             ("Oil prices rose sharply after the missile attack.", F, NEG, NN, None),
             ("Traders weighed the risk of disruption to Gulf supplies.", F, NEG, NN, None),
             ("Israel had earlier started ground incursions into Lebanon.", F, NEG, NN, None),
             ("Energy stocks gained in late trading.", F, POS, NN, None),
         ]),
    dict(pub="washington_post", slug="lebanon-civilians-flee-israel-incursion", group="mideast",
         title="Lebanese civilians flee north as Israeli forces cross border",
         sentences=[
             ("Thousands of families fled villages in southern Lebanon on Tuesday.", F, NEG, NN, None),
             ("Israeli forces began ground raids into southern Lebanon targeting Hezbollah positions.", F, NEG, NN, "mideast.raids"),
             ("\"We left with nothing,\" said one mother in Sidon.", Q, NEG, NN, None),
             ("Shelters in Beirut were already full.", F, NEG, NN, None),
         ],
         quotes=[("We left with nothing,", "", "resident", "", "Other", "illustrative anecdote")]),
    dict(pub="breitbart", slug="hezbollah-israel-strikes-iran-regime", group="mideast", embed_weight=0.1,
         title="Iran regime humiliated as Israel pounds terror group",
         sentences=[
             ("The Iranian regime suffered another embarrassing setback this week.", O, NEG, NN, None),
             ("Israel's campaign has gutted the leadership of the terror group.", B, NEG, NN, None),
             ("Observers said the Biden-Harris administration had emboldened Tehran.", O, NEG, ND, None),
             ("Israeli officials promised a forceful response.", F, NEG, NN, None),
         ]),
    # ---- debate (7)
    dict(pub="ap", slug="vance-walz-vice-presidential-debate", group="debate",
         title="Vance and Walz clash over policy in vice presidential debate",
         sentences=[
             ("JD Vance and Tim Walz met for their only debate on Tuesday night.", F, NEU, NB, None),
             ("The vice presidential debate between Vance and Walz was held in New York and aired on CBS.", F, NEU, NB, "debate.venue"),
             ("The candidates sparred over immigration, abortion and the economy.", F, NEU, NB, None),
             ("Both men kept a largely civil tone.", B, POS, NB, None),
         ]),
    dict(pub="cnn", slug="vp-debate-takeaways", group="debate",
         title="Takeaways from the Vance-Walz debate",
         sentences=[
             ("The debate was more cordial than many expected.", B, POS, NB, None),
             ("Walz stumbled early but found his footing on health care.", B, NEU, ND, None),
             ("Vance delivered polished answers but dodged a question about the 2020 election.", B, NEG, NR, None),
             ("The debate in New York aired on CBS and drew millions of viewers.", F, NEU, NN, "debate.venue"),
         ]),
    dict(pub="fox_news", slug="vance-wins-debate-walz", group="debate",
         title="Vance dominates Walz in the vice presidential debate",
         sentences=[
             ("Vance delivered a commanding performance on Tuesday night.", O, POS, NR, None),
             ("Walz appeared nervous and misspoke several times.", O, NEG, ND, None),
             ("The CBS debate in New York was the only meeting between the two running mates.", F, NEU, NB, "debate.venue"),
             ("\"I was wrong on that,\" Walz admitted during one exchange.", Q, NEG, ND, None),
         ],
         quotes=[("I was wrong on that,", "Tim Walz", "Governor of Minnesota", "Democratic Party", "Politics", "subject")]),
    dict(pub="huffpost", slug="vance-debate-lies-walz", group="debate", news_type="opinion",
         title="Vance's smooth debate act hid a string of falsehoods",
         sentences=[
             ("Vance's calm demeanor masked a series of misleading claims.", O, NEG, NR, None),
             ("Fact checkers flagged his statements on immigration.", F, NEG, NR, None),
             ("Walz focused on reproductive rights and health care.", F, NEU, ND, None),
         ]),
    dict(pub="nyt", slug="vance-walz-debate-fact-check", group="debate",
         title="Fact-checking the vice presidential debate",
         sentences=[
             ("Both candidates made claims that did not hold up.", F, NEG, NB, None),
             ("Vance misstated the number of migrants in Springfield.", F, NEG, NR, None),
             ("Walz overstated his record on taxes.", F, NEG, ND, None),
             ("The vice presidential debate between Vance and Walz took place in New York and aired on CBS.", F, NEU, NB, "debate.venue"),
         ]),
    dict(pub="usa_today", slug="who-won-vp-debate-polls", group="debate",
         title="Who won the VP debate? Snap polls split",
         sentences=[
             ("Snap polls showed a narrow edge for Vance.", F, NEU, NR, None),
             ("Voters gave Walz higher marks on likability.", F, POS, ND, None),
             ("Analysts doubt the debate will move the race much.", B, NEU, NB, None),
         ]),
    dict(pub="breitbart", slug="walz-debate-disaster", group="debate",
         title="Walz melts down on the debate stage",
         sentences=[
             ("Walz struggled to explain his false claims about his past.", O, NEG, ND, None),
             ("Vance calmly laid out the case against the Harris agenda.", O, POS, NR, None),
             ("The debate moderators repeatedly interrupted Vance.", B, NEG, NR, None),
         ]),
    # ---- helene (5)
    dict(pub="ap", slug="helene-death-toll-north-carolina", group="helene",
         title="Helene's death toll passes 100 as North Carolina towns dig out",
         sentences=[
             ("The death toll from Hurricane Helene climbed past 100 across six states.", F, NEG, NN, "helene.toll"),
             ("Western North Carolina was hit hardest by flooding.", F, NEG, NN, None),
             ("Hundreds of people remain unaccounted for.", F, NEG, NN, None),
             ("Crews worked to restore power to more than a million homes.", F, NEU, NN, None),
         ]),
    dict(pub="huffpost", slug="helene-asheville-flooding", group="helene",
         title="Asheville residents describe terror as Helene floods swept homes away",
         sentences=[
             ("Residents of Asheville described water rising to their rooftops.", F, NEG, NN, None),
             ("\"It was like the river came for us,\" one survivor said.", Q, NEG, NN, None),
             ("Helene's death toll rose above 100 across six states.", F, NEG, NN, "helene.toll"),
         ],
         quotes=[("It was like the river came for us,", "", "survivor", "", "Other", "illustrative anecdote")]),
    dict(pub="guardian", slug="hurricane-helene-climate-toll", group="helene",
         title="Hurricane Helene shows the rising toll of a warming climate",
         sentences=[
             ("Scientists said warmer seas fueled Helene's rapid growth.", F, NEG, NN, None),
             ("More than 100 people died across six states because of Hurricane Helene.", F, NEG, NN, "helene.toll"),
             ("Mountain communities were not prepared for such rainfall.", B, NEG, NN, None),
         ]),
    dict(pub="usa_today", slug="helene-how-to-help", group="helene",
         title="Hurricane Helene: how to help victims in North Carolina",
         sentences=[
             ("Relief groups are collecting water, food and supplies.", F, POS, NN, None),
             ("Donations can be made through the Red Cross.", F, POS, NN, None),
             ("The storm destroyed thousands of homes in the region.", F, NEG, NN, None),
         ]),
    dict(pub="washington_post", slug="helene-rescue-crews-mountains", group="helene",
         title="Rescue crews push into isolated mountain towns after Helene",
         sentences=[
             ("Helicopters dropped supplies to cut-off communities.", F, NEU, NN, None),
             ("The death toll from Hurricane Helene climbed past 100 in six states.", F, NEG, NN, "helene.toll"),
             ("Roads into several towns were washed away.", F, NEG, NN, None),
         ]),
    # ---- ports (3 plus the wsj article embedded with the debate group)
    dict(pub="cnn", slug="port-strike-east-gulf-coast", group="ports",
         title="Dockworkers strike at East and Gulf Coast ports",
         sentences=[
             ("Dockworkers walked off the job at ports from Maine to Texas on Tuesday.", F, NEG, NN, "ports.scope"),
             ("The strike is the first of its kind in nearly 50 years.", F, NEU, NN, None),
             ("Economists warned of shortages if it lasts for weeks.", F, NEG, NN, None),
         ]),
    dict(pub="guardian", slug="us-port-strike-workers-automation", group="ports",
         title="US port workers strike over pay and automation",
         sentences=[
             ("Union members want higher wages and a ban on automation.", F, NEU, NN, None),
             ("Dockworkers walked off the job at ports stretching from Maine to Texas.", F, NEG, NN, "ports.scope"),
             ("The White House urged both sides to keep talking.", F, NEU, ND, None),
         ]),
    dict(pub="usa_today", slug="port-strike-shopping-prices", group="ports",
         title="Will the port strike raise prices? What shoppers should know",
         sentences=[
             ("Shoppers may see higher prices on some imported goods.", B, NEG, NN, None),
             ("Retailers stocked up ahead of the holiday season.", F, NEU, NN, None),
             ("Perishable foods like bananas could be affected first.", F, NEG, NN, None),
         ]),
    dict(pub="wsj", slug="port-strike-retailers-supply-chain", group="ports", embed_group="debate",
         title="Retailers brace for supply chain strain from port strike",
         sentences=[
             ("Large retailers rerouted shipments to West Coast ports.", F, NEU, NN, None),
             ("Freight rates rose as carriers added surcharges.", F, NEG, NN, None),
             ("Dockworkers walked off the job at ports from Maine to Texas.", F, NEG, NN, "ports.scope"),
         ]),
    # ---- carter (2)
    dict(pub="nyt", slug="jimmy-carter-100th-birthday", group="carter",
         title="Jimmy Carter becomes the first former president to turn 100",
         sentences=[
             ("Jimmy Carter turned 100 on Tuesday in Plains, Georgia.", F, POS, ND, None),
             ("He is the longest-lived president in American history.", F, POS, ND, None),
             ("Neighbors gathered for a flyover and a concert in his honor.", F, POS, NN, None),
         ]),
    dict(pub="washington_post", slug="carter-centenarian-legacy", group="carter",
         title="At 100, Jimmy Carter's legacy looks different than it once did",
         sentences=[
             ("Carter's single term was long seen as a failure.", B, NEG, ND, None),
             ("Historians now credit his work on human rights and housing.", B, POS, ND, None),
             ("He has lived in hospice care since early 2023.", F, NEU, ND, None),
         ]),
    # ---- singletons (4)
    dict(pub="fox_news", slug="pete-rose-dies-hit-king", group=None,
         title="Pete Rose, baseball's hit king, dies at 83",
         labels=("Sports", "Baseball", "Baseball History"), tone=1, political=False,
         sentences=[
             ("Pete Rose died on Monday at his home in Las Vegas.", F, NEG, NN, None),
             ("He finished his career with a record 4,256 hits.", F, POS, NN, None),
             ("His lifetime ban kept him out of the Hall of Fame.", F, NEG, NN, None),
         ]),
    dict(pub="wsj", slug="verizon-outage-customers", group=None,
         title="Verizon restores service after nationwide outage",
         labels=("Science and Technology", "Technology", "Other"), tone=-3, political=False,
         sentences=[
             ("Verizon customers across the country lost service for hours on Monday.", F, NEG, NN, None),
             ("The company said the problem was fixed by evening.", F, NEU, NN, None),
             ("It did not say what caused the outage.", F, NEG, NN, None),
         ]),
    dict(pub="breitbart", slug="walz-china-tiananmen-claims", group=None,
         title="Walz admits he misspoke about being in Hong Kong during Tiananmen",
         labels=("Politics", "Politician", "Political Scandal"), tone=-3, political=True,
         sentences=[
             ("Walz conceded that he had misstated when he traveled to China.", F, NEG, ND, None),
             ("Records show he arrived months after the 1989 crackdown.", F, NEG, ND, None),
             ("Critics said the admission raised questions about his honesty.", O, NEG, ND, None),
         ]),
    dict(pub="huffpost", slug="dikembe-mutombo-dies", group=None,
         title="Dikembe Mutombo, NBA shot-blocking legend, dies at 58",
         labels=("Sports", "Basketball", "NBA"), tone=2, political=False,
         sentences=[
             ("Dikembe Mutombo died of brain cancer at 58.", F, NEG, NN, None),
             ("He was an eight-time All-Star and four-time defensive player of the year.", F, POS, NN, None),
             ("He built a hospital in his hometown of Kinshasa.", F, POS, NN, None),
         ]),
]

# Homepage links that fail to fetch: (publisher, url, index entry or None).
FAILURES = [
    ("ap", "https://apnews.com/video/israel-lebanon-live-coverage", None),
    ("cnn", "https://www.cnn.com/2024/10/01/politics/removed-story", None),
    ("nyt", "https://www.nytimes.com/2024/10/01/business/port-strike-economy.html", "@status:402"),
]


def clamp(v, lo=-5, hi=5):
    return max(lo, min(hi, v))


def article_url(a):
    host = HOSTS[a["pub"]]
    return f"{host}/2024/10/01/{a['slug']}"


def answers_for(a):
    group = GROUPS.get(a["group"]) if a["group"] else None
    category, topic, subtopic = a.get("labels") or group["labels"]
    political = group["political"] if group else a["political"]
    base_tone = group["tone"] if group else a["tone"]
    lean = PUBLISHER_LEAN[a["pub"]] if political else 0
    tone = base_tone
    if political and abs(lean) >= 3:
        tone = clamp(base_tone - 2)
    sentences = [s[0] for s in a["sentences"]]
    takeaways = " ".join(sentences[:2])
    news_type = a.get("news_type", "news report")
    return {
        "category": category,
        "topic": topic,
        "subtopic": subtopic,
        "takeaways": takeaways,
        "news_type": news_type,
        "justification": f"The article is classified as {news_type} based on how it presents the events.",
        "lean": lean,
        "lean_reason": "The article's framing and sourcing indicate this lean.",
        "tone": tone,
        "tone_reason": "The article's word choice and subject matter set this tone.",
        "headline_lean": clamp(lean - (1 if lean > 0 else -1 if lean < 0 else 0)),
        "headline_lean_reason": "The headline's wording indicates this lean.",
        "headline_tone": tone,
        "headline_tone_reason": "The headline's wording sets this tone.",
        "sentences": [
            {"text": t, "type": ty, "tone": to, "focus": fo, **({"fact": fk} if fk else {})}
            for (t, ty, to, fo, fk) in a["sentences"]
        ],
        "quotes": [
            {"quote": q[0], "person_name": q[1], "person_occupation": q[2], "person_affiliation": q[3],
             "person_domain": q[4], "person_capacity": q[5]}
            for q in a.get("quotes", [])
        ],
    }


def page_html(a, url, hour):
    paragraphs = "\n".join(f"    <p>{html.escape(s[0], quote=False)}</p>" for s in a["sentences"])
    published = f"{DATE}T{hour:02d}:15:00Z"
    return f"""<!doctype html>
<html>
<head>
  <title>{html.escape(a['title'])} | {a['pub']}</title>
  <meta property="og:title" content="{html.escape(a['title'])}">
  <meta property="og:type" content="article">
  <meta property="article:published_time" content="{published}">
  <link rel="canonical" href="{url}">
</head>
<body>
  <nav><a href="/">Home</a> <a href="/politics">Politics</a></nav>
  <article>
    <h1>{html.escape(a['title'])}</h1>
{paragraphs}
    <p>Advertisement</p>
    <div class="newsletter-signup"><p>Sign up for our newsletter</p></div>
  </article>
  <aside class="related-links"><a href="/other">More stories</a></aside>
  <footer>Copyright</footer>
</body>
</html>
"""


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="fixtures/fixture_day")
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    for sub in ("snapshots", "pages"):
        shutil.rmtree(out / sub, ignore_errors=True)
    (out / "pages").mkdir(parents=True, exist_ok=True)

    titles = [a["title"] for a in ARTICLES]
    assert len(set(titles)) == len(titles), "titles must be unique"

    index = {}
    design_articles = []
    by_pub = {}
    for n, a in enumerate(ARTICLES):
        url = article_url(a)
        name = f"{a['pub']}_{a['slug']}.html"
        hour = 6 + n % 12
        (out / "pages" / name).write_text(page_html(a, url, hour))
        index[url] = name
        by_pub.setdefault(a["pub"], []).append((a, url))
        design_articles.append({
            "publisher_id": a["pub"],
            "url": url,
            "title": a["title"],
            "group": a["group"],
            "embed_group": a.get("embed_group", a["group"]),
            "embed_weight": a.get("embed_weight", 1.0),
            "answers": answers_for(a),
        })
    for pub, url, entry in FAILURES:
        if entry:
            index[url] = entry
    (out / "pages" / "index.json").write_text(json.dumps(index, indent=2, sort_keys=True) + "\n")

    # Snapshots: each publisher's stories rotate through the top slots. The
    # third story first appears at 10:00; one capture links the lead story
    # with tracking parameters.
    for pub in HOSTS:
        stories = by_pub.get(pub, [])
        failures = [(u, "Watch live coverage" if "video" in u else "Developing story") for p, u, _ in FAILURES if p == pub]
        for t_index, t in enumerate(TIMES):
            items = []
            order = stories[t_index % len(stories):] + stories[: t_index % len(stories)]
            slot = 0
            for a, url in order:
                if a is stories[-1][0] and t_index == 0 and len(stories) > 2:
                    continue
                link = url + "?utm_source=homepage&utm_medium=top" if (slot == 0 and t_index == 2) else url
                items.append({"url": link, "title": a["title"], "y_offset": 180 + 260 * slot,
                              "font_size": 34 - 4 * slot, "image_area": 120000 if slot == 0 else 40000})
                slot += 1
            for url, title in failures:
                items.append({"url": url, "title": title, "y_offset": 180 + 260 * slot, "font_size": 20,
                              "image_area": 0})
                slot += 1
            items.append({"url": HOSTS[pub] + "/newsletters", "title": "Newsletters", "y_offset": 4000,
                          "font_size": 12, "image_area": 0})
            path = out / "snapshots" / pub / f"{DATE}_{t.replace(':', '')}.ndjson"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text("".join(json.dumps(i) + "\n" for i in items))

    design = {
        "date": DATE,
        "groups": {k: {"theme": g["theme"], "theme_short": g["theme_short"]} for k, g in GROUPS.items()},
        "facts": {k: {"summary": v} for k, v in FACTS.items()},
        "articles": design_articles,
    }
    (out / "design.json").write_text(json.dumps(design, indent=2) + "\n")


if __name__ == "__main__":
    main()
