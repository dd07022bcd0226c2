// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#include "msps/synthgen.hpp"

namespace msps {

// Fixed forever: changing an entry changes every text-bearing dataset.
const std::array<std::string_view, 1000>& word_list() {
    static constexpr std::array<std::string_view, 1000> kWords = {
        "able", "about", "accept", "across", "active", "actual", "address", "adult",
        "affect", "after", "against", "agency", "ago", "ahead", "airport", "album",
        "allow", "alone", "already", "alter", "amount", "ancient", "angry", "ankle",
        "answer", "apart", "apply", "area", "arise", "army", "arrive", "art", "artist",
        "ask", "aspect", "atom", "attack", "attend", "author", "avenue", "awake",
        "aware", "awful", "baby", "bacon", "bag", "balance", "banana", "bank", "barely",
        "barrel", "base", "basket", "battery", "beach", "bear", "beat", "become", "bee",
        "beer", "begin", "behind", "believe", "belong", "belt", "bend", "berry",
        "better", "bicycle", "bike", "bird", "biscuit", "black", "blame", "blast",
        "bless", "block", "bloom", "blow", "blunt", "boat", "boil", "bolt", "bone",
        "book", "boot", "borrow", "bottle", "bounce", "box", "brain", "brand", "bread",
        "breath", "brick", "brief", "bring", "broken", "brother", "brush", "bucket",
        "budget", "bulb", "bundle", "burn", "bus", "busy", "button", "buzz", "cable",
        "cage", "call", "camera", "canal", "candy", "canoe", "canyon", "capital", "car",
        "card", "cargo", "carry", "case", "castle", "cat", "cattle", "cave", "celery",
        "cement", "center", "certain", "chair", "champion", "channel", "charge",
        "chase", "check", "cheese", "cherry", "chicken", "child", "choice", "church",
        "circle", "city", "claim", "clarify", "clay", "clerk", "click", "cliff",
        "climb", "clock", "cloth", "clown", "clue", "coach", "coconut", "coffee",
        "coin", "color", "combine", "comic", "company", "conduct", "connect", "control",
        "cook", "copper", "coral", "corn", "correct", "cotton", "country", "course",
        "cover", "crack", "craft", "crash", "crawl", "cream", "creek", "cricket",
        "crisp", "crop", "crouch", "crucial", "cruise", "crunch", "crystal", "culture",
        "cupboard", "current", "curve", "custom", "cycle", "damage", "dance", "daring",
        "daughter", "day", "deal", "decade", "deck", "decline", "decrease", "defense",
        "degree", "deliver", "denial", "deny", "depend", "depth", "derive", "desert",
        "desk", "detect", "device", "diagram", "diamond", "diesel", "differ", "dignity",
        "dinner", "dirt", "discover", "dish", "display", "divert", "dizzy", "document",
        "doll", "domain", "donkey", "dose", "dove", "dragon", "drastic", "dream",
        "drift", "drink", "drive", "drum", "duck", "dune", "dust", "dwarf", "eager",
        "early", "earth", "east", "easy", "ecology", "edge", "educate", "egg", "either",
        "elder", "elegant", "elephant", "elite", "embark", "embrace", "emotion",
        "empower", "enable", "end", "endorse", "energy", "engage", "enhance", "enlist",
        "enrich", "ensure", "entire", "envelope", "equal", "era", "erode", "error",
        "escape", "essence", "eternal", "evil", "evolve", "example", "exchange",
        "exclude", "execute", "exhaust", "exile", "exit", "expand", "expire", "expose",
        "extend", "eye", "fabric", "faculty", "faint", "fall", "false", "family", "fan",
        "fantasy", "fashion", "fatal", "fatigue", "favorite", "federal", "feed",
        "female", "festival", "fever", "fiber", "field", "file", "filter", "find",
        "finger", "fire", "first", "fish", "fitness", "flag", "flash", "flavor",
        "flight", "float", "floor", "fluid", "fly", "focus", "foil", "follow", "foot",
        "forest", "fork", "forum", "fossil", "found", "fragile", "frequent", "friend",
        "frog", "frost", "frozen", "fuel", "funny", "fury", "gadget", "gain", "gallery",
        "gap", "garbage", "garlic", "gas", "gate", "gauge", "general", "genre",
        "genuine", "ghost", "gift", "ginger", "girl", "glad", "glare", "glide", "globe",
        "glory", "glow", "goat", "gold", "goose", "gospel", "govern", "grab", "grain",
        "grape", "gravity", "green", "grief", "grocery", "grow", "guard", "guide",
        "guitar", "gym", "hair", "hammer", "hand", "harbor", "harsh", "hat", "hawk",
        "head", "heart", "hedgehog", "hello", "help", "hen", "hidden", "hill", "hip",
        "history", "hockey", "hole", "hollow", "honey", "hope", "horror", "hospital",
        "hotel", "hover", "huge", "humble", "hundred", "hunt", "hurry", "husband",
        "ice", "idea", "idle", "ill", "illness", "imitate", "immune", "impose",
        "impulse", "include", "increase", "indicate", "industry", "inflict", "inhale",
        "initial", "injury", "inner", "input", "insane", "inside", "install",
        "interest", "invest", "involve", "island", "issue", "ivory", "jaguar", "jazz",
        "jealous", "jelly", "job", "joke", "joy", "juice", "jungle", "junk", "kangaroo",
        "keep", "key", "kid", "kind", "kiss", "kitchen", "kitten", "knee", "knock",
        "lab", "labor", "lady", "lamp", "laptop", "later", "laundry", "law", "lawsuit",
        "lazy", "leaf", "leave", "left", "legal", "leisure", "lend", "lens", "lesson",
        "level", "liberty", "license", "lift", "like", "limit", "lion", "list", "live",
        "load", "lobster", "lock", "lonely", "loop", "lottery", "lounge", "loyal",
        "luggage", "lunar", "luxury", "machine", "magic", "maid", "main", "make", "man",
        "mandate", "mansion", "maple", "march", "marine", "marriage", "mass", "match",
        "math", "matter", "maze", "mean", "meat", "medal", "melody", "member",
        "mention", "mercy", "merit", "mesh", "metal", "middle", "milk", "mimic",
        "minimum", "minute", "mirror", "miss", "mix", "mixture", "model", "mom",
        "monitor", "monster", "moon", "more", "mosquito", "motion", "motor", "mouse",
        "movie", "muffin", "multiply", "museum", "music", "mutual", "mystery", "naive",
        "napkin", "nasty", "nature", "neck", "negative", "neither", "nerve", "net",
        "neutral", "news", "nice", "noble", "nominee", "normal", "nose", "note",
        "notice", "now", "number", "nut", "obey", "oblige", "observe", "obvious",
        "ocean", "off", "office", "oil", "old", "omit", "one", "online", "open",
        "opinion", "option", "orbit", "order", "organ", "original", "ostrich", "other",
        "outer", "outside", "oven", "own", "oxygen", "ozone", "paddle", "pair", "palm",
        "panel", "panther", "parade", "park", "party", "patch", "patient", "pattern",
        "pave", "peace", "pear", "pelican", "penalty", "people", "perfect", "person",
        "phone", "phrase", "piano", "picture", "pig", "pill", "pink", "pipe", "pitch",
        "place", "plastic", "play", "pledge", "plug", "poem", "point", "pole", "pond",
        "pool", "portion", "possible", "potato", "poverty", "power", "practice",
        "predict", "prepare", "pretty", "price", "primary", "priority", "private",
        "problem", "produce", "program", "promote", "property", "protect", "provide",
        "pudding", "pulp", "pumpkin", "pupil", "purchase", "purpose", "push", "puzzle",
        "quality", "quarter", "quick", "quiz", "rabbit", "race", "radar", "rail",
        "raise", "ramp", "random", "rapid", "rate", "raven", "razor", "real", "rebel",
        "recall", "recipe", "recycle", "reflect", "refuse", "regret", "reject",
        "release", "rely", "remember", "remind", "render", "rent", "repair", "replace",
        "require", "resemble", "resource", "result", "retreat", "reunion", "review",
        "rhythm", "ribbon", "rich", "ridge", "right", "ring", "ripple", "ritual",
        "river", "roast", "robust", "romance", "rookie", "rose", "rough", "route",
        "rubber", "rug", "run", "rural", "saddle", "safe", "salad", "salon", "salute",
        "sample", "satisfy", "sausage", "say", "scan", "scatter", "scheme", "science",
        "scorpion", "scrap", "script", "sea", "season", "seat", "secret", "security",
        "seek", "select", "seminar", "sense", "series", "session", "setup", "shadow",
        "shallow", "shed", "sheriff", "shift", "ship", "shock", "shoot", "short",
        "shove", "shrug", "shy", "sick", "siege", "sign", "silk", "silver", "simple",
        "sing", "sister", "six", "skate", "ski", "skin", "skull", "slam", "slender",
        "slide", "slim", "slot", "slush", "smart", "smoke", "snack", "snap", "snow",
        "soccer", "sock", "soft", "soldier", "solid", "solve", "song", "sorry", "soul",
        "soup", "south", "spare", "spawn", "special", "spell", "sphere", "spider",
        "spin", "split", "sponsor", "sport", "spray", "spring", "square", "squirrel",
        "stadium", "stage", "stamp", "start", "stay", "steel", "step", "stick", "sting",
        "stomach", "stool", "stove", "street", "strong", "student", "stumble",
        "subject", "subway", "such", "suffer", "suggest", "summer", "sunny", "super",
        "supreme", "surface", "surprise", "survey", "sustain", "swallow", "swap",
        "swear", "swift", "swing", "sword", "symptom", "system", "tackle", "tail",
        "talk", "tape", "task", "tattoo", "teach", "tell", "tenant", "tent", "test",
        "thank", "theme", "theory", "they", "this", "three", "throw", "thunder", "tide",
        "tilt", "time", "tip", "tissue", "toast", "today", "toe", "toilet", "tomato",
        "tone", "tonight", "tooth", "topic", "torch", "tortoise", "total", "toward",
        "town", "track", "traffic", "train", "trap", "trash", "tray", "tree", "trial",
        "trick", "trim", "trophy", "truck", "truly", "trust", "try", "tuition", "tuna",
        "turkey", "turtle", "twenty", "twin", "two", "typical", "umbrella", "unaware",
        "uncover", "undo", "unfold", "uniform", "unit", "unknown", "until", "unveil",
        "upgrade", "upon", "upset", "urge", "use", "useful", "usual", "vacant", "vague",
        "valley", "van", "vapor", "vast", "vehicle", "vendor", "venue", "verify",
        "very", "veteran", "vibrant", "victory", "video", "village", "violin", "virus",
        "visit", "vital", "vocal", "void", "volume", "voyage", "wagon", "walk",
        "walnut", "warfare", "warrior", "wasp", "water", "way", "weapon", "weasel",
        "web", "weekend", "welcome", "wet", "what", "wheel", "where", "whisper",
        "width", "wild", "win", "wine", "wink", "winter", "wisdom", "wish", "wolf",
        "wonder", "wool", "work", "worry", "wrap", "wrestle", "write", "yard", "yellow",
        "young", "zebra", "zone",
    };
    return kWords;
}

}  // namespace msps
