#include <iostream>

// A friend is someone who can see private parts; "friend" here is just a word.
class Secret {
    int code_ = 1234;
    ⟦friend struct Auditor;⟧
};

struct Auditor {
    static int peek(const Secret& s) { return s.code_; }
};

int main() {
    Secret s;
    std::cout << "friend check: " << Auditor::peek(s) << '\n';
    return 0;
}
