#!/usr/bin/env python3
"""Regenerate the default asset lists and the checksum manifest.

The English stop-word list is scikit-learn's ENGLISH_STOP_WORDS; the other
languages ship curated high-frequency function-word lists. LDNOOBW files are
starter subsets of the public blocklist; the UT1 file is a small sample.
Point --assets-dir at full upstream lists for production runs.

Checksums use the same fnv1a64 construction as the loader; keep this in sync
with asset_checksum() in src/assets.cpp.
"""

import json
import os
import sys

ROOT = os.path.join(os.path.dirname(__file__), "..", "assets")

DE_STOPWORDS = """
aber alle allem allen aller alles als also am an ander andere anderem anderen
anderer anderes anderm andern anderr anders auch auf aus bei bin bis bist da
damit dann das dass dasselbe dazu daß dein deine deinem deinen deiner deines
dem demselben den denn denselben der derer derselbe derselben des desselben
dessen dich die dies diese dieselbe dieselben diesem diesen dieser dieses dir
doch dort du durch ein eine einem einen einer eines einig einige einigem
einigen einiger einiges einmal er es etwas euch euer eure eurem euren eurer
eures für gegen gewesen hab habe haben hat hatte hatten hier hin hinter ich
ihm ihn ihnen ihr ihre ihrem ihren ihrer ihres im in indem ins ist jede jedem
jeden jeder jedes jene jenem jenen jener jenes jetzt kann kein keine keinem
keinen keiner keines können könnte machen man manche manchem manchen mancher
manches mein meine meinem meinen meiner meines mich mir mit muss musste nach
nicht nichts noch nun nur ob oder ohne sehr sein seine seinem seinen seiner
seines selbst sich sie sind so solche solchem solchen solcher solches soll
sollte sondern sonst um und uns unse unsem unsen unser unses unter viel vom
von vor war waren warst was weg weil weiter welche welchem welchen welcher
welches wenn werde werden wie wieder will wir wird wirst wo wollen wollte
während würde würden zu zum zur zwar zwischen über
"""

ES_STOPWORDS = """
a al algo algunas algunos ante antes como con contra cual cuando de del desde
donde durante e el ella ellas ellos en entre era erais eran eras eres es esa
esas ese eso esos esta estaba estado estamos estan estar este esto estos estoy
fue fueron fui fuimos ha habia han hasta hay la las le les lo los me mi mia
mias mio mios mis mucho muchos muy más mí nada ni no nos nosotras nosotros
nuestra nuestras nuestro nuestros o os otra otras otro otros para pero poco
por porque que quien quienes qué se sea sean segun ser si sido sin sobre sois
somos son soy su sus suya suyas suyo suyos también tanto te tenemos tener
tengo ti tiene tienen toda todas todo todos tu tus tuya tuyas tuyo tuyos tú un
una uno unos vosotras vosotros vuestra vuestras vuestro vuestros y ya yo él
ésta éstas éste éstos
"""

FR_STOPWORDS = """
a afin ai ainsi après au aucun aucune aujourd auquel aussi autre autres aux
auxquelles auxquels avaient avais avait avant avec avoir c ce ceci cela celle
celles celui cependant certain certaine certaines certains ces cet cette ceux
chaque chez ci comme comment d dans de dehors delà depuis des desquelles
desquels dessous dessus deux devant doit donc dont du duquel durant dès elle
elles en entre et eu eux furent fut il ils j je jusqu jusque l la laquelle le
lequel les lesquelles lesquels leur leurs lors lorsque lui là ma mais me mes
mien mienne miennes miens moi moins mon même n ne ni non nos notre nous né
on ont ou où par parce pas pendant peu peut plus plusieurs pour pourquoi qu
quand que quel quelle quelles quelque quelques quels qui quoi s sa sans se
selon ses sien sienne siennes siens soi soit son sont sous sur t ta tandis te
tes tien tienne tiennes tiens toi ton tous tout toute toutes tu un une vers
voici voilà vos votre vous vu y à ça étaient étais était été être
"""

IT_STOPWORDS = """
a ad agli ai al alla alle allo anche ancora avere aveva avevano ben buono che
chi cinque comprare con consecutivi consecutivo cosa cui da del della dello
dentro deve devo di doppio due e ecco fare fine fino fra gente giu gli ha hai
hanno ho il in indietro invece io la lavoro le lei lo loro lui lungo ma me
meglio molta molti molto nei nella nelle nello no noi nome nostra nostri
nostro nove nuovi nuovo o oltre ora otto peggio pero persone piu più poco
primo promesso qua quarto quasi quattro quello questo qui quindi quinto
rispetto sara secondo sei sembra sembrava senza sette sia siamo siete solo
sono sopra soprattutto sotto stati stato stesso su subito sul sulla sullo tanto
te tempo terzo tra tre triplo ultimo un una uno va vai voi volte vostra vostre
vostri vostro è
"""

# Starter subsets of the public LDNOOBW blocklists, enough to exercise the
# signal; swap in the full upstream files for production filtering.
LDNOOBW = {
    "en": [
        "anal", "anus", "arse", "ass", "ballsack", "bastard", "bitch", "blowjob",
        "blow job", "boner", "boob", "bukkake", "butthole", "clitoris", "cock",
        "coon", "cum", "cunt", "dick", "dildo", "dyke", "fag", "faggot",
        "felching", "fellatio", "fuck", "fudgepacker", "fudge packer", "gangbang",
        "handjob", "hentai", "homoerotic", "jerk off", "jizz", "labia", "milf",
        "muff diver", "nigger", "nipple", "orgasm", "orgy", "penis", "piss",
        "porn", "porno", "pornography", "pube", "pussy", "rectum", "rimjob",
        "scrotum", "semen", "sex", "shit", "slut", "smegma", "spunk", "tit",
        "twat", "vagina", "wank", "whore", "xxx",
    ],
    "de": [
        "arsch", "arschloch", "bumsen", "ficken", "fotze", "hure", "muschi",
        "nutte", "onanieren", "poppen", "porno", "schlampe", "schwanz",
        "schwanzlutscher", "titten", "vögeln", "wichser", "wichsen",
    ],
    "es": [
        "cabron", "cabrón", "capullo", "chocho", "concha", "coño", "culo",
        "follar", "gilipollas", "joder", "mamada", "maricon", "maricón",
        "mierda", "pendejo", "polla", "porno", "puta", "puto", "tetas", "verga",
        "zorra",
    ],
    "fr": [
        "baiser", "bite", "bordel", "branler", "chatte", "connard", "connasse",
        "couilles", "cul", "encule", "enculé", "fellation", "foutre", "merde",
        "nichons", "pipe", "porno", "putain", "pute", "salope", "sodomie",
    ],
    "it": [
        "cazzo", "coglione", "culo", "ditalino", "fica", "figa", "fottere",
        "inculare", "merda", "mignotta", "pompino", "porno", "puttana",
        "scopare", "stronzo", "tette", "troia", "vaffanculo", "zoccola",
    ],
}

# Sample of blacklisted domains; production runs point at the full
# UT-Capitole list instead.
UT1_SAMPLE = [
    "badsite.example",
    "malware-download.example",
    "phishing-login.example",
    "adult-content.example",
    "aggressive-ads.example",
    "warez.example",
    "cryptojacking.example",
    "tracker-farm.example",
]

HEADER = "# {name}\n# One entry per line; '#' lines are comments.\n"


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def mix64(x: int) -> int:
    mask = 0xFFFFFFFFFFFFFFFF
    x ^= x >> 33
    x = (x * 0xFF51AFD7ED558CCD) & mask
    x ^= x >> 33
    x = (x * 0xC4CEB9FE1A85EC53) & mask
    x ^= x >> 33
    return x


def checksum(data: bytes) -> str:
    return f"fnv1a64:{mix64(fnv1a64(data)):016x}"


def write_list(rel_path: str, name: str, entries):
    path = os.path.join(ROOT, rel_path)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    body = HEADER.format(name=name) + "\n".join(entries) + "\n"
    with open(path, "w", encoding="utf-8") as f:
        f.write(body)
    return rel_path, checksum(body.encode("utf-8"))


def main():
    try:
        from sklearn.feature_extraction.text import ENGLISH_STOP_WORDS
        en_words = sorted(ENGLISH_STOP_WORDS)
    except ImportError:
        print("scikit-learn unavailable; keeping existing en stopwords", file=sys.stderr)
        en_words = None

    manifest = {}
    stopword_sets = {
        "de": DE_STOPWORDS,
        "es": ES_STOPWORDS,
        "fr": FR_STOPWORDS,
        "it": IT_STOPWORDS,
    }
    if en_words is not None:
        rel, digest = write_list("stopwords/en.txt", "English stop words", en_words)
        manifest[rel] = digest
    for lang, blob in stopword_sets.items():
        words = sorted(set(blob.split()))
        rel, digest = write_list(f"stopwords/{lang}.txt", f"{lang} stop words", words)
        manifest[rel] = digest
    for lang, words in LDNOOBW.items():
        rel, digest = write_list(f"ldnoobw/{lang}.txt", f"{lang} blocklist (starter subset)",
                                 sorted(set(words)))
        manifest[rel] = digest
    rel, digest = write_list("ut1/domains.txt", "blacklisted domains (sample)", UT1_SAMPLE)
    manifest[rel] = digest

    with open(os.path.join(ROOT, "manifest.json"), "w", encoding="utf-8") as f:
        json.dump(dict(sorted(manifest.items())), f, indent=2)
        f.write("\n")
    print(f"wrote {len(manifest)} asset files under {os.path.abspath(ROOT)}")


if __name__ == "__main__":
    main()
