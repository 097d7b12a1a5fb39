#include <cctype>
#include <cmath>

#include "tabkit/sheet.hpp"
#include "tabkit/utf8.hpp"

namespace tabkit {

namespace {

const char* function_name(Function fn) {
    switch (fn) {
    case Function::Index: return "INDEX";
    case Function::Match: return "MATCH";
    case Function::Left: return "LEFT";
    case Function::Right: return "RIGHT";
    case Function::Len: return "LEN";
    case Function::Upper: return "UPPER";
    }
    return "?";
}

std::optional<Function> function_from_name(std::string_view word) {
    std::string up;
    up.reserve(word.size());
    for (char c : word) up.push_back(char(std::toupper(static_cast<unsigned char>(c))));
    if (up == "INDEX") return Function::Index;
    if (up == "MATCH") return Function::Match;
    if (up == "LEFT") return Function::Left;
    if (up == "RIGHT") return Function::Right;
    if (up == "LEN") return Function::Len;
    if (up == "UPPER") return Function::Upper;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    FormulaAst parse() {
        if (text_.empty() || text_[0] != '=') throw FormulaParseError(0, "'='");
        pos_ = 1;
        FormulaAst ast = parse_concat();
        skip_ws();
        if (pos_ != text_.size()) throw FormulaParseError(pos_, "end of formula");
        return ast;
    }

private:
    std::string_view text_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    static FormulaAst binary(BinaryOp op, FormulaAst left, FormulaAst right) {
        BinaryNode node;
        node.op = op;
        node.left = std::make_unique<FormulaAst>(std::move(left));
        node.right = std::make_unique<FormulaAst>(std::move(right));
        return FormulaAst{std::move(node)};
    }

    FormulaAst parse_concat() {
        FormulaAst left = parse_additive();
        while (eat('&')) {
            left = binary(BinaryOp::Concat, std::move(left), parse_additive());
        }
        return left;
    }

    FormulaAst parse_additive() {
        FormulaAst left = parse_primary();
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            left = binary(c == '+' ? BinaryOp::Add : BinaryOp::Sub, std::move(left),
                          parse_primary());
        }
        return left;
    }

    FormulaAst parse_primary() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number_lit();
        if (c == '"') return parse_string_lit();
        if (c == '(') {
            ++pos_;
            FormulaAst inner = parse_concat();
            if (!eat(')')) throw FormulaParseError(pos_, "')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_word();
        throw FormulaParseError(pos_, "a number, string, cell reference, or function");
    }

    FormulaAst parse_number_lit() {
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            size_t digits = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ == digits) pos_ = mark; // not an exponent after all
        }
        auto value = parse_number(text_.substr(start, pos_ - start));
        if (!value) throw FormulaParseError(start, "a number");
        return FormulaAst{NumberLit{*value}};
    }

    FormulaAst parse_string_lit() {
        size_t start = pos_;
        ++pos_; // opening quote
        std::string value;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '"') {
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
                    value.push_back('"');
                    pos_ += 2;
                    continue;
                }
                ++pos_;
                return FormulaAst{StringLit{std::move(value)}};
            }
            value.push_back(c);
            ++pos_;
        }
        throw FormulaParseError(start, "a closing '\"'");
    }

    std::string_view scan_word() {
        size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    FormulaAst parse_word() {
        size_t start = pos_;
        std::string_view word = scan_word();
        if (peek() == '(') return parse_call(start, word);

        auto ref = parse_cell_ref(word);
        if (!ref) throw FormulaParseError(start, "a cell reference or function name");
        if (peek() != ':') return FormulaAst{RefNode{*ref}};

        ++pos_; // ':'
        skip_ws();
        size_t end_start = pos_;
        auto end_ref = parse_cell_ref(scan_word());
        if (!end_ref) throw FormulaParseError(end_start, "a cell reference");
        RangeRef range(*ref, *end_ref);
        if (!range.is_vector()) {
            throw FormulaParseError(start, "a single-column or single-row range");
        }
        return FormulaAst{RangeNode{range}};
    }

    FormulaAst parse_call(size_t name_offset, std::string_view word) {
        auto fn = function_from_name(word);
        if (!fn) {
            throw FormulaParseError(name_offset,
                                    "a function name (INDEX, MATCH, LEFT, RIGHT, LEN, UPPER)");
        }
        eat('(');
        CallNode call;
        call.fn = *fn;
        if (peek() != ')') {
            call.args.push_back(parse_concat());
            while (eat(',')) call.args.push_back(parse_concat());
        }
        if (!eat(')')) throw FormulaParseError(pos_, "')' or ','");

        size_t n = call.args.size();
        bool ok = false;
        const char* arity = "";
        switch (call.fn) {
        case Function::Index: ok = n == 2; arity = "2 arguments for INDEX"; break;
        case Function::Match: ok = n == 2 || n == 3; arity = "2-3 arguments for MATCH"; break;
        case Function::Left: ok = n == 1 || n == 2; arity = "1-2 arguments for LEFT"; break;
        case Function::Right: ok = n == 1 || n == 2; arity = "1-2 arguments for RIGHT"; break;
        case Function::Len: ok = n == 1; arity = "1 argument for LEN"; break;
        case Function::Upper: ok = n == 1; arity = "1 argument for UPPER"; break;
        }
        if (!ok) throw FormulaParseError(name_offset, arity);
        return FormulaAst{std::move(call)};
    }
};

int node_precedence(const FormulaAst& ast) {
    if (const auto* bin = std::get_if<BinaryNode>(&ast.node)) {
        return bin->op == BinaryOp::Concat ? 1 : 2;
    }
    return 3;
}

void print_node(const FormulaAst& ast, std::string& out);

void print_child(const FormulaAst& child, int parent_prec, bool right_side, std::string& out) {
    int prec = node_precedence(child);
    bool parens = right_side ? prec <= parent_prec : prec < parent_prec;
    if (parens) out.push_back('(');
    print_node(child, out);
    if (parens) out.push_back(')');
}

void print_node(const FormulaAst& ast, std::string& out) {
    if (const auto* num = std::get_if<NumberLit>(&ast.node)) {
        out += format_number(num->value);
    } else if (const auto* str = std::get_if<StringLit>(&ast.node)) {
        out.push_back('"');
        for (char c : str->value) {
            out.push_back(c);
            if (c == '"') out.push_back('"');
        }
        out.push_back('"');
    } else if (const auto* ref = std::get_if<RefNode>(&ast.node)) {
        out += ref->ref.to_string();
    } else if (const auto* range = std::get_if<RangeNode>(&ast.node)) {
        out += range->range.to_string();
    } else if (const auto* call = std::get_if<CallNode>(&ast.node)) {
        out += function_name(call->fn);
        out.push_back('(');
        for (size_t i = 0; i < call->args.size(); ++i) {
            if (i) out.push_back(',');
            print_node(call->args[i], out);
        }
        out.push_back(')');
    } else if (const auto* bin = std::get_if<BinaryNode>(&ast.node)) {
        int prec = bin->op == BinaryOp::Concat ? 1 : 2;
        print_child(*bin->left, prec, false, out);
        out.push_back(bin->op == BinaryOp::Concat ? '&' : bin->op == BinaryOp::Add ? '+' : '-');
        print_child(*bin->right, prec, true, out);
    }
}

class Evaluator {
public:
    explicit Evaluator(const Sheet& sheet) : sheet_(sheet) {}

    Outcome<CellValue> scalar(const FormulaAst& ast) {
        if (const auto* num = std::get_if<NumberLit>(&ast.node)) return CellValue(num->value);
        if (const auto* str = std::get_if<StringLit>(&ast.node)) return CellValue(str->value);
        if (const auto* ref = std::get_if<RefNode>(&ast.node)) return sheet_.get(ref->ref);
        if (const auto* range = std::get_if<RangeNode>(&ast.node)) {
            return LookupError{ErrorKind::Value,
                               "range " + range->range.to_string() + " in scalar context"};
        }
        if (const auto* call = std::get_if<CallNode>(&ast.node)) return eval_call(*call);
        return eval_binary(std::get<BinaryNode>(ast.node));
    }

private:
    const Sheet& sheet_;

    Outcome<std::vector<CellValue>> vector_arg(const FormulaAst& ast) {
        if (const auto* range = std::get_if<RangeNode>(&ast.node)) {
            return sheet_.read_vector(range->range);
        }
        Outcome<CellValue> value = scalar(ast);
        if (!value.ok()) return value.error();
        return LookupError{ErrorKind::Value, "expected a range"};
    }

    Outcome<CellValue> eval_binary(const BinaryNode& bin) {
        Outcome<CellValue> left = scalar(*bin.left);
        if (!left.ok()) return left;
        Outcome<CellValue> right = scalar(*bin.right);
        if (!right.ok()) return right;
        if (bin.op == BinaryOp::Concat) {
            return CellValue(left.value().display() + right.value().display());
        }
        if (!left.value().is_number() || !right.value().is_number()) {
            const CellValue& bad = left.value().is_number() ? right.value() : left.value();
            return LookupError{ErrorKind::Value, "arithmetic on non-number " + bad.display()};
        }
        double result = bin.op == BinaryOp::Add ? left.value().as_number() + right.value().as_number()
                                                : left.value().as_number() - right.value().as_number();
        if (!std::isfinite(result)) return LookupError{ErrorKind::Value, "non-finite result"};
        return CellValue(result);
    }

    /// n argument of LEFT/RIGHT: a non-negative integer.
    Outcome<size_t> count_arg(const FormulaAst& ast) {
        Outcome<CellValue> value = scalar(ast);
        if (!value.ok()) return value.error();
        if (!value.value().is_number()) {
            return LookupError{ErrorKind::Value, "count must be a number"};
        }
        double n = value.value().as_number();
        if (n < 0 || n != std::floor(n)) {
            return LookupError{ErrorKind::Value, "count must be a non-negative integer"};
        }
        return static_cast<size_t>(n);
    }

    Outcome<CellValue> eval_call(const CallNode& call) {
        switch (call.fn) {
        case Function::Index: {
            Outcome<std::vector<CellValue>> vec = vector_arg(call.args[0]);
            if (!vec.ok()) return vec.error();
            Outcome<CellValue> pos = scalar(call.args[1]);
            if (!pos.ok()) return pos;
            if (!pos.value().is_number()) {
                return LookupError{ErrorKind::Value, "INDEX position must be a number"};
            }
            return index(vec.value(), pos.value().as_number());
        }
        case Function::Match: {
            Outcome<CellValue> value = scalar(call.args[0]);
            if (!value.ok()) return value;
            Outcome<std::vector<CellValue>> vec = vector_arg(call.args[1]);
            if (!vec.ok()) return vec.error();
            MatchType mtype = MatchType::AscendingLargestLeq;
            if (call.args.size() == 3) {
                Outcome<CellValue> type = scalar(call.args[2]);
                if (!type.ok()) return type;
                if (!type.value().is_number() ||
                    (type.value().as_number() != 0 && type.value().as_number() != 1)) {
                    return LookupError{ErrorKind::Value, "MATCH type must be 0 or 1"};
                }
                mtype = type.value().as_number() == 0 ? MatchType::Exact
                                                      : MatchType::AscendingLargestLeq;
            }
            Outcome<size_t> pos = match(value.value(), vec.value(), mtype);
            if (!pos.ok()) return pos.error();
            return CellValue(static_cast<double>(pos.value()));
        }
        case Function::Left:
        case Function::Right: {
            Outcome<CellValue> text = scalar(call.args[0]);
            if (!text.ok()) return text;
            size_t n = 1;
            if (call.args.size() == 2) {
                Outcome<size_t> count = count_arg(call.args[1]);
                if (!count.ok()) return count.error();
                n = count.value();
            }
            std::string s = text.value().display();
            std::string_view piece =
                call.fn == Function::Left ? utf8::prefix_scalars(s, n) : utf8::suffix_scalars(s, n);
            return CellValue(std::string(piece));
        }
        case Function::Len: {
            Outcome<CellValue> text = scalar(call.args[0]);
            if (!text.ok()) return text;
            return CellValue(static_cast<double>(utf8::scalar_count(text.value().display())));
        }
        case Function::Upper: {
            Outcome<CellValue> text = scalar(call.args[0]);
            if (!text.ok()) return text;
            return CellValue(utf8::upper(text.value().display()));
        }
        }
        return LookupError{ErrorKind::Value, "unknown function"};
    }
};

} // namespace

FormulaAst parse_formula(std::string_view text) {
    return Parser(text).parse();
}

std::string print_formula(const FormulaAst& ast) {
    std::string out = "=";
    print_node(ast, out);
    return out;
}

Outcome<CellValue> evaluate(const FormulaAst& ast, const Sheet& sheet) {
    return Evaluator(sheet).scalar(ast);
}

Outcome<CellValue> evaluate_formula(std::string_view text, const Sheet& sheet) {
    return evaluate(parse_formula(text), sheet);
}

} // namespace tabkit
