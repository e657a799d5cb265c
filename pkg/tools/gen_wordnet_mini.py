#!/usr/bin/env python3
"""Generate the bundled noun hypernym database in WordNet file format.

Emits src/cppgen/data/wordnet_mini/{index.noun,data.noun}. The synset table
below is curated for the privacy-policy domain: one sense per lemma, picked
for that domain rather than by corpus frequency, plus a few plural lemmas so
the provider needs no morphology code. Any real WordNet-format database can
be dropped in instead via the lexical_dir config.
"""

from pathlib import Path

# (key, lemmas, hypernym key or None, gloss)
SYNSETS = [
    ("entity", ["entity"], None, "that which is perceived to have its own existence"),
    # physical things
    ("physical_entity", ["physical_entity"], "entity", "an entity that has physical existence"),
    ("object", ["object", "physical_object"], "physical_entity", "a tangible and visible entity"),
    ("whole", ["whole", "unit"], "object", "an assemblage of parts regarded as a single entity"),
    ("living_thing", ["living_thing"], "whole", "a living (or once living) entity"),
    ("organism", ["organism", "being"], "living_thing", "a living thing that can act independently"),
    ("person", ["person", "individual", "people"], "organism", "a human being"),
    ("user", ["user", "users"], "person", "a person who makes use of a thing or service"),
    ("partner", ["partner", "partners"], "person", "a person associated with another in some activity"),
    ("artifact", ["artifact", "artefact"], "whole", "a man-made object"),
    ("instrumentality", ["instrumentality"], "artifact", "an artifact that is instrumental in accomplishing some end"),
    ("device", ["device", "devices"], "instrumentality", "an instrumentality invented for a particular purpose"),
    ("machine", ["machine"], "device", "a device with interrelated parts performing a function"),
    ("computer", ["computer", "computing_machine"], "machine", "a machine for performing calculations automatically"),
    ("server", ["server", "servers", "host"], "computer", "a computer that provides services to client computers"),
    ("equipment", ["equipment"], "instrumentality", "an instrumentality needed for an undertaking"),
    ("telephone", ["telephone", "phone", "telephone_set"], "equipment", "electronic equipment that converts sound into signals"),
    ("cellular_telephone", ["cellular_telephone", "cellphone", "mobile"], "telephone", "a hand-held mobile radiotelephone"),
    ("camera", ["camera", "photographic_camera"], "equipment", "equipment for taking photographs"),
    ("scanner", ["scanner"], "device", "a device that captures images or data by scanning"),
    ("microphone", ["microphone", "mic"], "device", "a device that converts sound into electrical signals"),
    ("storage", ["storage", "memory_device"], "device", "a device where information can be kept"),
    ("card", ["card"], "artifact", "a flat rectangular piece of stiff material"),
    ("credit_card", ["credit_card", "charge_card"], "card", "a card used to buy things on credit"),
    ("structure", ["structure", "construction"], "artifact", "a thing constructed of parts"),
    ("building", ["building", "edifice"], "structure", "a structure with walls and a roof"),
    ("gallery", ["gallery", "art_gallery"], "building", "a room or building for displaying works of art"),
    ("library", ["library"], "building", "a building that houses a collection of materials"),
    ("creation", ["creation"], "artifact", "an artifact brought into existence by someone"),
    ("representation", ["representation"], "creation", "a creation that is a visual or tangible rendering of something"),
    ("visual_representation", ["picture", "image", "icon", "images"], "representation", "a visual representation of an object or scene"),
    ("photograph", ["photograph", "photo", "pic", "snapshot", "exposure", "photos", "pics"], "visual_representation", "a picture obtained with a camera"),
    ("video_recording", ["video", "footage", "videos"], "visual_representation", "a recording of visible images"),
    ("publication", ["publication"], "creation", "a copy of a printed work offered for distribution"),
    ("book", ["book", "volume"], "publication", "a written work printed on pages bound together"),
    ("album", ["album", "record_album"], "creation", "a collection gathered into a single bound or digital volume"),
    ("website", ["website", "web_site", "site"], "creation", "a collection of pages served from a single domain"),
    ("facebook", ["facebook"], "website", "a social networking website"),
    ("twitter", ["twitter"], "website", "a microblogging website"),
    # locations
    ("location", ["location", "locations"], "object", "a point or extent in space"),
    ("whereabouts", ["whereabouts"], "location", "the general location where something is"),
    ("geolocation", ["geolocation", "geo-location", "geoposition"], "location", "the location of a device as measured by its signals"),
    ("point", ["point"], "location", "the precise location of something"),
    ("position", ["position", "place", "spot"], "point", "the particular portion of space occupied by something"),
    ("geographic_point", ["geographic_point"], "point", "a point on the surface of the Earth"),
    ("address", ["address", "addresses"], "geographic_point", "written directions for finding a place"),
    ("residence", ["residence", "abode"], "address", "an address at which you dwell more than temporarily"),
    # abstractions
    ("abstraction", ["abstraction"], "entity", "a general concept formed by extracting common features"),
    ("psychological_feature", ["psychological_feature"], "abstraction", "a feature of the mental life of a living organism"),
    ("cognition", ["cognition", "knowledge"], "psychological_feature", "the result of perceiving or learning"),
    ("information", ["information", "info"], "cognition", "knowledge acquired through study or experience"),
    ("data", ["data", "datum"], "information", "a collection of facts from which conclusions may be drawn"),
    ("discipline", ["discipline", "subject_area"], "cognition", "a branch of knowledge"),
    ("geography", ["geography", "geo", "geographics"], "discipline", "study of the earth's surface and its features"),
    ("event", ["event"], "psychological_feature", "something that happens at a given place and time"),
    ("act", ["act", "deed"], "event", "something that people do or cause to happen"),
    ("activity", ["activity"], "act", "any specific behavior"),
    ("scan", ["scan"], "activity", "the act of systematically moving a beam or gaze over something"),
    ("telephone_call", ["call", "phone_call", "telephone_call"], "act", "a telephone connection"),
    ("beginning", ["beginning", "start"], "event", "the event consisting of the start of something"),
    ("birth", ["birth", "nativity"], "beginning", "the event of being born"),
    ("communication", ["communication"], "abstraction", "something that is communicated between people"),
    ("auditory_communication", ["auditory_communication"], "communication", "communication that relies on hearing"),
    ("speech", ["speech", "spoken_language"], "auditory_communication", "communication by word of mouth"),
    ("voice", ["voice", "voices"], "auditory_communication", "the sound made through the vocal organs"),
    ("talk", ["talk", "talking"], "auditory_communication", "an exchange of spoken words"),
    ("written_communication", ["written_communication", "writing"], "communication", "communication by means of written symbols"),
    ("correspondence", ["correspondence", "mail"], "written_communication", "communication by the exchange of letters or messages"),
    ("email", ["email", "e-mail", "electronic_mail"], "correspondence", "a system or message of electronic correspondence"),
    ("list", ["list", "listing"], "written_communication", "a database containing an ordered array of items"),
    ("directory", ["directory"], "list", "an alphabetical list of names and contact details"),
    ("phone_book", ["phone_book", "phonebook", "phone-book", "address_book", "contacts"], "directory", "a directory of telephone subscribers or personal contacts"),
    ("name", ["name", "names"], "communication", "a language unit by which a person or thing is known"),
    ("surname", ["surname", "family_name", "last_name", "cognomen"], "name", "the name used to identify the members of a family"),
    ("first_name", ["first_name", "given_name", "forename"], "name", "the name that precedes the surname"),
    ("description", ["description", "verbal_description"], "communication", "a statement that represents something in words"),
    ("profile", ["profile", "user_profile"], "description", "biographical and account details describing a user"),
    ("medium", ["medium", "media"], "communication", "a means or instrumentality for communicating"),
    ("social_media", ["social_media", "socialmedia"], "medium", "media for social interaction through online networks"),
    ("measure", ["measure", "quantity", "amount"], "abstraction", "how much there is of something"),
    ("definite_quantity", ["definite_quantity"], "measure", "a specific measure of amount"),
    ("number", ["number", "numbers"], "definite_quantity", "a concept of quantity involving zero and units"),
    ("phone_number", ["phone_number", "telephone_number"], "number", "the number assigned to a telephone line"),
    ("time_unit", ["time_unit", "unit_of_time"], "measure", "a unit for measuring time periods"),
    ("day", ["day"], "time_unit", "a period of 24 hours"),
    ("date", ["date"], "day", "the specified day of the month"),
    ("birthdate", ["birthdate", "dob", "birth_date"], "date", "the date on which someone was born"),
    ("anniversary", ["anniversary"], "day", "the date on which an event occurred in some previous year"),
    ("birthday", ["birthday", "natal_day"], "anniversary", "an anniversary of the day on which a person was born"),
    ("time_period", ["time_period", "period"], "measure", "an amount of time"),
    ("year", ["year", "twelvemonth"], "time_period", "a period of time containing 365 (or 366) days"),
    ("relation", ["relation"], "abstraction", "an abstraction belonging to or characteristic of two entities"),
    ("account", ["account", "user_account", "accounts"], "relation", "a formal relationship with a service under which data is kept"),
    ("possession", ["possession"], "relation", "anything owned or possessed"),
    ("payment", ["payment", "payments"], "possession", "a sum of money paid"),
    ("pay", ["pay", "salary", "wage"], "payment", "something that remunerates"),
    ("share", ["share", "portion"], "possession", "assets belonging to or due to or contributed by an individual"),
    ("group", ["group", "grouping"], "abstraction", "any number of entities considered as a unit"),
    ("social_group", ["social_group"], "group", "people sharing some social relation"),
    ("organization", ["organization", "organisation", "organizations"], "social_group", "a group of people who work together"),
    ("institution", ["institution", "establishment"], "organization", "an organization founded for a specific purpose"),
    ("company", ["company", "companies", "firm"], "institution", "an institution created to conduct business"),
]

HEADER = (
    "  1 This database is a compact noun hypernym graph in WordNet file format.\n"
    "  2 Generated by tools/gen_wordnet_mini.py; senses are curated per lemma.\n"
)


def main():
    out_dir = Path(__file__).resolve().parent.parent / "src" / "cppgen" / "data" / "wordnet_mini"
    out_dir.mkdir(parents=True, exist_ok=True)

    offsets = {key: f"{(i + 1) * 100:08d}" for i, (key, _, _, _) in enumerate(SYNSETS)}

    data_lines = []
    index: dict[str, list[str]] = {}
    lemma_has_hyp: dict[str, bool] = {}
    for key, lemmas, hyp, gloss in SYNSETS:
        words = " ".join(f"{lemma} 0" for lemma in lemmas)
        if hyp is None:
            ptrs = "000"
        else:
            ptrs = f"001 @ {offsets[hyp]} n 0000"
        data_lines.append(f"{offsets[key]} 03 n {len(lemmas):02x} {words} {ptrs} | {gloss}")
        for lemma in lemmas:
            index.setdefault(lemma.lower(), []).append(offsets[key])
            lemma_has_hyp[lemma.lower()] = lemma_has_hyp.get(lemma.lower(), False) or hyp is not None

    index_lines = []
    for lemma in sorted(index):
        offs = index[lemma]
        p_cnt = "1 @" if lemma_has_hyp[lemma] else "0"
        index_lines.append(f"{lemma} n {len(offs)} {p_cnt} {len(offs)} 0 {' '.join(offs)}")

    (out_dir / "data.noun").write_text(HEADER + "\n".join(data_lines) + "\n", encoding="utf-8")
    (out_dir / "index.noun").write_text(HEADER + "\n".join(index_lines) + "\n", encoding="utf-8")
    print(f"wrote {len(SYNSETS)} synsets, {len(index)} lemmas -> {out_dir}")


if __name__ == "__main__":
    main()
