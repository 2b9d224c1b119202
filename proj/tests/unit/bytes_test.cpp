#include "catch_amalgamated.hpp"

#include "susy/hash.hpp"
#include "susy/types.hpp"
#include "test_support.hpp"

using namespace susy;

TEST_CASE("hex round trip and rejects", "[bytes]") {
  const Bytes b{0x00, 0x01, 0xab, 0xff};
  CHECK(to_hex(b) == "0001abff");
  CHECK(from_hex("0001abff") == b);
  CHECK(from_hex("0001ABFF") == b);
  CHECK_FALSE(from_hex("abc"));
  CHECK_FALSE(from_hex("zz"));
  CHECK(from_hex("")->empty());
}

TEST_CASE("sha256 matches the FIPS 180-2 vector", "[bytes]") {
  const std::string abc = "abc";
  const auto d = sha256(ByteView{reinterpret_cast<const std::uint8_t*>(abc.data()), abc.size()});
  CHECK(d.hex() == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("ByteWriter and ByteReader are big-endian inverses", "[bytes]") {
  ByteWriter w;
  w.u8(0x12).u16(0x3456).u32(0x789abcde).u64(0x0102030405060708ULL);
  CHECK(to_hex(w.bytes()) == "123456789abcde0102030405060708");
  ByteReader r{w.bytes()};
  CHECK(r.u8() == 0x12);
  CHECK(r.u16() == 0x3456);
  CHECK(r.u32() == 0x789abcde);
  CHECK(r.u64() == 0x0102030405060708ULL);
  CHECK(r.remaining() == 0);
  CHECK_THROWS_AS(r.u8(), DecodeError);
}

TEST_CASE("addresses match the reference derivation", "[bytes]") {
  const auto& a = test::golden().at("addresses");
  CHECK(account_address("alice").hex() == a.at("account:alice"));
  CHECK(account_address("bob").hex() == a.at("account:bob"));
  CHECK(account_address("carol").hex() == a.at("account:carol"));
  for (ChainId c : {kOriginChain, kDestinationChain}) {
    const std::string p = "contract:" + std::to_string(c.value) + ":";
    CHECK(lu_port_address(c).hex() == a.at(p + "LU-PORT"));
    CHECK(ib_port_address(c).hex() == a.at(p + "IB-PORT"));
    CHECK(nebula_address(c).hex() == a.at(p + "NEBULA-SC"));
  }
}

TEST_CASE("chain names", "[bytes]") {
  CHECK(chain_name(kOriginChain) == "origin");
  CHECK(chain_name(kDestinationChain) == "destination");
  CHECK(chain_from_name("destination") == kDestinationChain);
  CHECK_FALSE(chain_from_name("mars"));
}
