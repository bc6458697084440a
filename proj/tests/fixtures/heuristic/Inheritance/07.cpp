#include <iostream>
#include <string>

namespace io {
class Stream {
public:
    virtual ~Stream() = default;
    virtual void put(const std::string& s) = 0;
};
}  // namespace io

⟦class ConsoleStream : public io::Stream {
public:
    void put(const std::string& s) override { std::cout << s; }
};⟧

int main() {
    ConsoleStream out;
    io::Stream& s = out;
    s.put("ok\n");
}
