List<Integer> computeHashCode(String path) {
  ArrayList<Integer> result = new ArrayList<Integer>();
  InputStreamReader rd = new InputStreamReader(new FileInputStream(path));
  BufferedReader br = new BufferedReader(rd);
  String str;
  while ((str = br.readLine()) != null) {
    int hashCode;
    hashCode = str.hashCode();
    result.add(hashCode);
  }
  br.close();
  return result;
}
