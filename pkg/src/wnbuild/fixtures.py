"""Small bundled datasets for demos and tests.

Everything here is synthetic: the class precisions and configuration
confidences are made-up values chosen so every stage has something to do.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

# entity -> {food -> beverage -> juice -> wine, animal -> dog}
TOY_WORDNET = """\
# synset_id\tpos\tsemfile\tlemmas\thypernyms
entity.n.01\tn\tTops\tentity\t
food.n.01\tn\tfood\tfood\tentity.n.01
beverage.n.01\tn\tfood\tbeverage\tfood.n.01
juice.n.01\tn\tfood\tjuice\tbeverage.n.01
wine.n.01\tn\tfood\twine\tjuice.n.01
animal.n.01\tn\tanimal\tanimal\tentity.n.01
dog.n.01\tn\tanimal\tdog\tanimal.n.01
"""

DEMO_WORDNET = """\
# synset_id\tpos\tsemfile\tlemmas\thypernyms
entity.n.01\tn\tTops\tentity\t
food.n.01\tn\tfood\tfood|nutrient\tentity.n.01
beverage.n.01\tn\tfood\tbeverage|drink\tfood.n.01
juice.n.01\tn\tfood\tjuice\tbeverage.n.01
wine.n.01\tn\tfood\twine\tjuice.n.01
water.n.01\tn\tfood\twater\tbeverage.n.01
milk.n.01\tn\tfood\tmilk\tbeverage.n.01
bread.n.01\tn\tfood\tbread|loaf\tfood.n.01
meat.n.01\tn\tfood\tmeat\tfood.n.01
poultry.n.01\tn\tfood\tpoultry|chicken\tmeat.n.01
animal.n.01\tn\tanimal\tanimal|beast\tentity.n.01
mammal.n.01\tn\tanimal\tmammal\tanimal.n.01
dog.n.01\tn\tanimal\tdog\tmammal.n.01
cat.n.01\tn\tanimal\tcat\tmammal.n.01
bird.n.01\tn\tanimal\tbird\tanimal.n.01
chicken.n.02\tn\tanimal\tchicken|hen\tbird.n.01
artifact.n.01\tn\tartifact\tartifact|artefact\tentity.n.01
container.n.01\tn\tartifact\tcontainer\tartifact.n.01
bottle.n.01\tn\tartifact\tbottle\tcontainer.n.01
glass.n.02\tn\tartifact\tglass|drinking_glass\tcontainer.n.01
substance.n.01\tn\tsubstance\tsubstance|matter\tentity.n.01
liquid.n.01\tn\tsubstance\tliquid|fluid\tsubstance.n.01
glass.n.01\tn\tsubstance\tglass\tsubstance.n.01
"""

DEMO_BILINGUAL_1 = """\
# direction\theadword\ttranslations
ts\tvino\twine
ts\tzumo\tjuice
ts\tbebida\tbeverage|drink
ts\tagua\twater
ts\tleche\tmilk
ts\tpan\tbread|loaf
ts\tcarne\tmeat
ts\tpollo\tchicken
ts\talimento\tfood|nutrient
ts\tperro\tdog
ts\tgato\tcat
ts\tave\tbird
ts\tbotella\tbottle
ts\tvaso\tglass
ts\trecipiente\tcontainer
ts\tliquido\tliquid|fluid
ts\tsustancia\tsubstance|matter
"""

DEMO_BILINGUAL_2 = """\
# direction\theadword\ttranslations
st\twine\tvino
st\tjuice\tzumo|jugo
st\tanimal\tanimal
st\tbeast\tanimal|bestia
st\tmammal\tmamifero
st\then\tgallina
st\tchicken\tpollo|gallina
st\tcontainer\trecipiente|envase
st\tfluid\tliquido|fluido
"""

DEMO_MONOLINGUAL = """\
# headword\tsense_no\tgenus\tdefinition
vino\t1\tzumo\tzumo de uva fermentado que se bebe
vino\t2\tbebida\tbebida alcoholica que se hace con uva
zumo\t1\tbebida\tbebida que se obtiene exprimiendo fruta
zumo\t2\tliquido\tliquido que se extrae de la fruta
jugo\t1\tzumo\tzumo de fruta
mosto\t1\tzumo\tzumo de la uva antes de fermentar
bebida\t1\tliquido\tliquido que se bebe
agua\t1\tliquido\tliquido transparente que se bebe
leche\t1\tliquido\tliquido blanco que se bebe y alimenta
pan\t1\talimento\talimento hecho de harina que se come
carne\t1\talimento\talimento que se come de los animales
pollo\t1\tave\tave joven de la gallina
pollo\t2\tcarne\tcarne de ave que se come
alimento\t1\tsustancia\tsustancia que se come y nutre
perro\t1\tmamifero\tmamifero domestico que ladra
gato\t1\tmamifero\tmamifero domestico que maulla
mamifero\t1\tanimal\tanimal vertebrado que mama de su madre
ave\t1\tanimal\tanimal vertebrado con plumas que vuela
gallina\t1\tave\tave domestica que pone huevos
animal\t1\tser\tser vivo que siente y se mueve
botella\t1\trecipiente\trecipiente de vidrio para guardar liquidos
vaso\t1\trecipiente\trecipiente para beber liquidos
vaso\t2\t-\tconducto del cuerpo por donde circula la sangre
recipiente\t1\tobjeto\tobjeto que sirve para guardar cosas
envase\t1\trecipiente\trecipiente para guardar y transportar productos
liquido\t1\tsustancia\tsustancia que fluye
"""

DEMO_STOPLIST = "\n".join(
    "de que se la el los las con y para por su del un una en antes donde hecho".split()
) + "\n"

SYNTHETIC_PRECISIONS = """\
# SYNTHETIC values for the demo fixture, not measured on any real dictionary
# dimension\tclass_name\tprecision\tsample_size
POLYSEMY\tMONO_MONO\t0.92\t50
POLYSEMY\tMONO_POLY\t0.60\t50
POLYSEMY\tMULTI_MONO\t0.88\t50
POLYSEMY\tMULTI_POLY\t0.45\t50
STRUCTURAL\tSHARED_SYNSET\t0.90\t50
STRUCTURAL\tHYPONYMY_PAIR\t0.70\t50
STRUCTURAL\tSIBLING_PAIR\t0.55\t50
CONCEPTUAL\tLOW_DISTANCE\t0.84\t50
"""

SYNTHETIC_CONFIDENCES = """\
# SYNTHETIC per-configuration confidences for the demo fixture
# configuration\tsemfile\tconfidence
1\t*\t0.99
2\t*\t0.85
3\t*\t0
4\t*\t0.70
5\t*\t0
6\t*\t0
7\t*\t0
8\t*\t0
"""

DEMO_GOLD_LINKS = """\
# word\tsynset_id
vino\twine.n.01
zumo\tjuice.n.01
jugo\tjuice.n.01
bebida\tbeverage.n.01
agua\twater.n.01
leche\tmilk.n.01
pan\tbread.n.01
carne\tmeat.n.01
pollo\tpoultry.n.01
pollo\tchicken.n.02
alimento\tfood.n.01
perro\tdog.n.01
gato\tcat.n.01
mamifero\tmammal.n.01
ave\tbird.n.01
gallina\tchicken.n.02
animal\tanimal.n.01
bestia\tanimal.n.01
botella\tbottle.n.01
vaso\tglass.n.02
recipiente\tcontainer.n.01
envase\tcontainer.n.01
liquido\tliquid.n.01
fluido\tliquid.n.01
sustancia\tsubstance.n.01
"""

DEMO_GOLD_TAGS = """\
# headword\tsense_no\ttag
vino\t1\tfood
vino\t2\tfood
zumo\t1\tfood
zumo\t2\tfood
jugo\t1\tfood
mosto\t1\tfood
bebida\t1\tfood
agua\t1\tfood
leche\t1\tfood
pan\t1\tfood
carne\t1\tfood
pollo\t1\tanimal
pollo\t2\tfood
alimento\t1\tfood
perro\t1\tanimal
gato\t1\tanimal
mamifero\t1\tanimal
ave\t1\tanimal
gallina\t1\tanimal
animal\t1\tanimal
botella\t1\tartifact
vaso\t1\tartifact
vaso\t2\tbody
recipiente\t1\tartifact
envase\t1\tartifact
liquido\t1\tsubstance
"""

DEMO_CONFIG = {
    "wordnet": "wordnet.tsv",
    "bilinguals": ["dict_vox.tsv", "dict_collins.tsv"],
    "monolingual": "monolingual.tsv",
    "stoplist": "stoplist.txt",
    "precisions": "precisions.tsv",
    "confidences": "confidences.tsv",
    "gold_links": "gold_links.tsv",
    "gold_tags": "gold_tags.tsv",
    "out": "out",
    "link_threshold": "0.85",
    "distance_threshold": "1",
    "combiner": "NOISY_OR",
    "exclude_accepted": True,
    "top_filter": "F2+(F3>0)",
    "heuristics": ["MONOSEMOUS", "DISTANCE", "FIRST_SENSE"],
    "merge_threshold": "0.85",
    "max_path": 1,
    "max_iters": 10,
}

_FILES = {
    "wordnet.tsv": DEMO_WORDNET,
    "dict_vox.tsv": DEMO_BILINGUAL_1,
    "dict_collins.tsv": DEMO_BILINGUAL_2,
    "monolingual.tsv": DEMO_MONOLINGUAL,
    "stoplist.txt": DEMO_STOPLIST,
    "precisions.tsv": SYNTHETIC_PRECISIONS,
    "confidences.tsv": SYNTHETIC_CONFIDENCES,
    "gold_links.tsv": DEMO_GOLD_LINKS,
    "gold_tags.tsv": DEMO_GOLD_TAGS,
}


def materialize(directory: str | Path) -> Path:
    """Write the demo dataset and a ``config.json`` into ``directory``;
    returns the config path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, text in _FILES.items():
        (directory / name).write_text(text, encoding="utf-8")
    cfg = directory / "config.json"
    cfg.write_text(json.dumps(DEMO_CONFIG, indent=2) + "\n", encoding="utf-8")
    return cfg


# -- four-word chain for the bootstrap --------------------------------------
#
# Taxonomy vino -> zumo -> bebida -> alimento over the toy wordnet
# wine -> juice -> beverage -> food, with only zumo = juice accepted.
# Round 1: vino/zumo is class 2 (A above, B below) and promotes vino = wine;
# zumo/bebida is class 4 at 0.70 and bebida/alimento class 5 at 0, both
# below the 0.8 threshold. Round 2: vino/zumo is now class 1, nothing new.

CHAIN_BILINGUAL = """\
ts\tvino\twine
ts\tzumo\tjuice
ts\tbebida\tbeverage
ts\talimento\tfood
"""

CHAIN_TAXONOMY = """\
food\talimento\t1\t-\t-
food\tbebida\t1\talimento\t1
food\tzumo\t1\tbebida\t1
food\tvino\t1\tzumo\t1
"""

CHAIN_ACCEPTED = [("zumo", "juice.n.01")]
CHAIN_THRESHOLD = Fraction(8, 10)


def chain_fixture() -> dict:
    from wnbuild.bilingual import merge_directions, read_bilingual
    from wnbuild.graph import load_wordnet
    from wnbuild.merger import read_confidence_table
    from wnbuild.taxonomy import read_taxonomies

    return {
        "g": load_wordnet(TOY_WORDNET.splitlines(), name="toy"),
        "B": merge_directions(read_bilingual(CHAIN_BILINGUAL.splitlines(), "chain")),
        "taxonomies": read_taxonomies(CHAIN_TAXONOMY.splitlines()),
        "A": set(CHAIN_ACCEPTED),
        "conf_table": read_confidence_table(SYNTHETIC_CONFIDENCES.splitlines()),
        "threshold": CHAIN_THRESHOLD,
    }
