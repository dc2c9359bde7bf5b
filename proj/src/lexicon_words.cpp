#include "sevote/lexicon.hpp"

namespace sevote {
namespace {

// Valence +1.
constexpr std::string_view kPositive[] = {
    "good", "great", "awesome", "excellent", "amazing", "nice", "love", "loved", "loves", "lovely",
    "like", "liked", "likes", "cool", "fantastic", "wonderful", "perfect", "perfectly", "brilliant",
    "superb", "outstanding", "happy", "glad", "pleased", "thanks", "thank", "thankful", "grateful",
    "appreciate", "appreciated", "appreciates", "helpful", "useful", "handy", "elegant", "clean",
    "cleaner", "clever", "smart", "neat", "tidy", "fast", "faster", "fastest", "quick", "quickly",
    "efficient", "robust", "stable", "reliable", "solid", "secure", "safe", "works", "working",
    "worked", "fixed", "resolved", "solved", "solves", "correct", "correctly", "accurate",
    "beautiful", "beautifully", "best", "better", "improved", "improvement", "improvements",
    "improves", "enhance", "enhanced", "enhancement", "optimized", "optimal", "smooth", "smoothly",
    "seamless", "seamlessly", "easy", "easier", "easiest", "simple", "simpler", "intuitive",
    "readable", "maintainable", "scalable", "flexible", "powerful", "impressive", "incredible",
    "excited", "exciting", "enjoy", "enjoyed", "fun", "cheers", "congrats", "congratulations",
    "kudos", "bravo", "yay", "welcome", "welcomed", "wow", "hooray", "sweet", "fine", "success",
    "successful", "successfully", "passes", "passing", "passed", "lgtm", "approve", "approved",
    "approves", "praise", "recommend", "recommended", "supported", "compatible", "consistent",
    "convenient", "comfortable", "confident", "friendly", "polite", "kind", "generous", "honest",
    "pleasant", "pleasure", "delighted", "delightful", "thrilled", "splendid", "terrific",
    "fabulous", "marvelous", "remarkable", "exceptional", "favorite", "favourite", "win", "wins",
    "winning", "won", "benefit", "beneficial", "valuable", "worthwhile", "productive", "responsive",
    "lightweight", "modern", "straightforward", "painless", "effortless", "flawless", "wonderfully",
    "nicely", "greatly", "happily", "gladly", "elegantly", "cleanly", "kindly", "cute", "gorgeous",
    "glorious", "ideal", "superior", "stellar", "wise", "insightful", "informative", "thorough",
    "concise", "precise", "clear", "clearer", "clearly", "awesomeness", "goodness", "excellence",
    "excellently", "lovingly", "fantastically", "amazingly", "impressed", "inspiring", "inspired",
    "motivated", "motivating", "encouraging", "encouraged", "hopeful", "optimistic", "promising",
    "progress", "tremendous", "terrifically", "fond", "admire", "admired", "adore", "adored",
    "blessed", "lucky", "fortunate", "satisfied", "satisfying", "satisfaction", "rewarding",
    "cheerful", "joy", "joyful", "smiling", "smile", "smiles", "laugh", "hilarious", "lol", "haha",
    "thx", "ty", "appreciation", "gratitude", "respect", "respected", "trustworthy", "trusted",
    "dependable", "performant", "snappy", "speedy", "blazing", "rocks", "rock", "rocked", "slick",
    "polished", "refined", "graceful", "handsome", "charming", "genius", "magic", "magical",
    "victory", "triumph", "accomplished", "achievement", "achieve", "achieved", "helpfully",
    "usable", "accessible", "elegance", "simplicity", "clarity", "awesomely", "superbly",
    "brilliantly", "well"
};

// Valence -1.
constexpr std::string_view kNegative[] = {
    "bad", "worse", "worst", "terrible", "horrible", "awful", "poor", "poorly", "ugly", "hate",
    "hated", "hates", "hating", "dislike", "disliked", "annoying", "annoyed", "annoys", "annoyance",
    "frustrating", "frustrated", "frustration", "angry", "anger", "mad", "furious", "upset", "sad",
    "unhappy", "disappointed", "disappointing", "disappointment", "broken", "breaks", "breaking",
    "broke", "buggy", "crash", "crashes", "crashed", "crashing", "fail", "fails", "failed",
    "failing", "failure", "failures", "wrong", "incorrect", "invalid", "slow", "slower", "slowest",
    "sluggish", "laggy", "hang", "hangs", "freeze", "freezes", "frozen", "stuck", "leak", "leaks",
    "leaking", "leaked", "corrupt", "corrupted", "corruption", "unstable", "unreliable", "insecure",
    "vulnerable", "flaky", "messy", "mess", "hacky", "confusing", "confused", "confuses", "unclear",
    "obscure", "cryptic", "complicated", "convoluted", "overcomplicated", "bloated", "clunky",
    "useless", "pointless", "worthless", "stupid", "dumb", "silly", "ridiculous", "nonsense",
    "garbage", "trash", "crap", "crappy", "junk", "sucks", "suck", "sucked", "sucky", "lame",
    "painful", "pain", "nightmare", "disaster", "mistake", "mistakes", "regression", "regressions",
    "obsolete", "outdated", "lacking", "inconsistent", "incompatible", "incomplete", "unusable",
    "unresponsive", "unfortunately", "unfortunate", "sorry", "damn", "dammit", "hell", "wtf",
    "shit", "fuck", "fucking", "idiot", "idiotic", "moron", "pathetic", "sloppy", "careless",
    "lazy", "rude", "hostile", "toxic", "blame", "blamed", "problematic", "troublesome", "trouble",
    "worry", "worried", "worrying", "fear", "afraid", "scared", "scary", "dangerous", "risky",
    "harmful", "damage", "damaged", "destroy", "destroyed", "destroys", "panic", "panics",
    "segfault", "segfaults", "unacceptable", "impossible", "tedious", "boring", "annoyingly",
    "terribly", "horribly", "badly", "wrongly", "sadly", "weird", "bizarre", "inefficient",
    "costly", "overkill", "reject", "rejected", "refuse", "refused", "complain", "complaint",
    "complaints", "ugh", "meh", "argh", "fragile", "brittle", "wasted", "waste", "wastes",
    "wasting", "faulty", "defect", "defective", "glitch", "glitchy", "misleading", "misbehaves",
    "misbehaving", "malformed", "disgusting", "disgust", "gross", "hideous", "nasty", "horrendous",
    "atrocious", "abysmal", "dreadful", "lousy", "inferior", "mediocre", "subpar", "shoddy",
    "flawed", "flaw", "flaws", "bugged", "crippled", "cripple", "lagging", "stalls", "stalled",
    "deadlock", "deadlocks", "hacked", "exploit", "exploited", "breach", "insane", "crazy",
    "absurd", "unbearable", "intolerable", "irritating", "irritated", "angering", "outraged",
    "outrage", "hatred", "miserable", "misery", "depressing", "depressed", "awkward", "clumsy",
    "ugliness", "unmaintainable", "unreadable", "spaghetti", "kludge", "kludgy", "workaround",
    "headache", "headaches", "hassle", "grief", "regret", "regrets", "regrettable", "shame",
    "shameful", "embarrassing", "embarrassed", "offensive", "insulting", "insult", "rant",
    "ranting", "whine", "whining", "sick", "tired", "exhausted", "stressful", "stressed",
    "fragmented", "overwhelmed", "hopeless", "helpless", "pity", "poorer", "nonfunctional",
    "inoperable", "dysfunctional", "bogus", "hostility", "dislikes", "confusion", "chaos", "chaotic"
};

}  // namespace

std::span<const std::string_view> builtin_positive_words() noexcept { return kPositive; }
std::span<const std::string_view> builtin_negative_words() noexcept { return kNegative; }

}  // namespace sevote
